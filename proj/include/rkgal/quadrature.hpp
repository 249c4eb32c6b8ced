#pragma once

#include <functional>

#include "rkgal/errors.hpp"
#include "rkgal/types.hpp"

namespace rkgal {

/// Tolerances and limits for the adaptive integrator. `infinite_window` is
/// the half-width W used to truncate whole-line integrals.
struct QuadratureSpec {
  Scalar abs_tol = 1e-10;
  Scalar rel_tol = 1e-10;
  int max_subdivisions = 1 << 20;
  Scalar infinite_window = 500.0;

  void validate() const;
};

using Integrand = std::function<Scalar(Scalar)>;

/// Adaptive Gauss-Kronrod 15(7) integration of f over [domain.a, domain.b].
/// Globally adaptive: the interval with the largest error estimate is
/// bisected until the total estimate meets max(abs_tol, rel_tol*|result|).
/// Subdivision order is a pure function of the inputs.
/// Throws SubdivisionLimitExceeded when max_subdivisions is exhausted.
Scalar integrate(const Integrand& f, Interval domain,
                 const QuadratureSpec& spec = {});

/// Whole-line integral, truncated to [center - W, center + W] where W is
/// spec.infinite_window and `center` locates the integrand's active region.
Scalar integrate_line(const Integrand& f, Scalar center,
                      const QuadratureSpec& spec = {});

/// Sum with pairwise reduction; deterministic and order-stable.
Scalar pairwise_sum(const Vector& v);

}  // namespace rkgal
