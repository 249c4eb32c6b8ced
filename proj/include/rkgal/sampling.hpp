#pragma once

#include <optional>
#include <string>

#include "rkgal/family.hpp"
#include "rkgal/kernel.hpp"

namespace rkgal {

enum class SamplingKind { Nonuniform, Jittered, Ctem };

/// Ordered sample abscissae gamma_1 < ... < gamma_N with trapezoid-convention
/// weights w_n = (gamma_{n+1} - gamma_{n-1}) / 2 under the endpoint
/// convention gamma_0 = gamma_1, gamma_{N+1} = gamma_N.
struct SamplingSet {
  Vector abscissae;
  Vector weights;
  SamplingKind kind = SamplingKind::Nonuniform;
  Interval interval;
  std::uint64_t seed = 0;
  bool has_tangential = false;               // C-TEM tangency flag
  std::optional<Scalar> ctem_threshold;      // M = ||x||_inf at capture

  int size() const { return static_cast<int>(abscissae.size()); }
  /// Covering-radius convention: half the maximum gap.
  Scalar delta() const;
};

/// Trapezoid weights for a strictly increasing abscissa vector.
Vector trapezoid_weights(const Vector& abscissae);

/// First abscissa at -L-2, then 2L+4 gaps i.i.d. uniform on [lo, hi]
/// (2L+5 points total).
SamplingSet make_nonuniform(int L, Interval gap_range, std::uint64_t seed);
inline SamplingSet make_nonuniform(int L, std::uint64_t seed) {
  return make_nonuniform(L, Interval{0.9, 1.1}, seed);
}

/// gamma_k = k + delta_k for k in [-L-2, L+2], delta_k uniform on
/// [-jitter, jitter]. Throws JitterTooLarge when jitter >= 1/2.
SamplingSet make_jittered(int L, Scalar jitter, std::uint64_t seed);

/// Crossing time encoding machine: abscissae are the roots of
/// x(t) - M sin(pi t) in [interval.a, interval.b] with M = ||x||_inf
/// (grid sup of step grid_step, polished locally). Roots are located by
/// sign-change bracketing on the grid plus bisection to root_tol; grid points
/// with |residual| <= root_tol that are not part of a sign change are emitted
/// as tangential crossings and flagged.
SamplingSet make_ctem(const FriSignal& x, Interval interval,
                      Scalar grid_step = 1e-3, Scalar root_tol = 1e-10);

/// Sampled data of one signal on one sampling set.
struct SampleRecord {
  SamplingSet set;
  Vector values;
  std::optional<Scalar> source_norm_inf;
};

SampleRecord capture(const FriSignal& x, const SamplingSet& set);

/// Pre-reconstruction operator: S f(x) = sum_n w_n f(gamma_n) K(x, gamma_n),
/// returned as a signal on the kernel's padded trial window. Throws
/// WindowMismatch when the kernel window does not cover the samples.
FriSignal pre_reconstruct(const SampleRecord& rec,
                          const TruncatedKernel& kernel);

std::string to_string(SamplingKind kind);
SamplingKind sampling_kind_from_string(const std::string& name);

}  // namespace rkgal
