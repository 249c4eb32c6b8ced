#pragma once

#include <functional>
#include <vector>

#include "rkgal/kernel.hpp"
#include "rkgal/reconstruct.hpp"
#include "rkgal/sampling.hpp"

namespace rkgal {

struct BestApproximation {
  Vector coeffs;
  Scalar error = 0.0;
};

/// L2-orthogonal projection of x onto V_{2,L}(trial) by the normal equations
/// G c = b, b_i = <x, phi(. - i - theta_i)>; error is the residual L2 norm.
/// Throws SingularGram when the Gram matrix condition exceeds 1e12.
BestApproximation best_approximation(const FriSignal& x,
                                     const ShiftedFamily& trial, int L,
                                     const QuadratureSpec& spec = {});

/// Same projection for a general evaluable supported (up to negligible mass)
/// on `domain`; pairings and the norm integrate adaptively.
BestApproximation best_approximation(const std::function<Scalar(Scalar)>& x,
                                     Interval domain,
                                     const ShiftedFamily& trial, int L,
                                     const QuadratureSpec& spec = {});

/// Weighted l2-stability bounds of the sampling scheme on V_{2,L}(trial):
/// C1^2 / C2^2 are the extreme generalized eigenvalues of the weighted
/// sample-evaluation form against the trial Gram. An empty sampling set
/// yields C1 = C2 = 0 with the degenerate flag raised.
struct StabilityReport {
  Scalar C1 = 0.0;
  Scalar C2 = 0.0;
  Scalar ratio = 0.0;
  bool degenerate = false;
};

StabilityReport stability_bounds(const ShiftedFamily& trial, int L,
                                 const SamplingSet& set,
                                 const QuadratureSpec& spec = {});

/// Residue E(U, F): worst-case fraction of a unit-norm signal's L2 mass
/// outside F (a union of intervals), clamped to [0, 1].
Scalar residue(const ShiftedFamily& trial, int L,
               const std::vector<Interval>& F, const QuadratureSpec& spec = {});

/// Numerical admissibility summary. All values are grid-based estimates and
/// carry the "approximate (grid-based)" flag when serialized.
struct AdmissibilityReport {
  Scalar D1 = 0.0;           // lower pairing bound on the trial space
  Scalar D2 = 0.0;           // upper pairing bound
  Scalar D4 = 0.0;           // cross-pairing lower bound
  Scalar r0 = 0.0;           // composite contraction indicator
  Scalar residue = 0.0;      // E(U, B(Gamma, delta))
  Scalar kernel_norm = 0.0;  // ||K||_W
  Scalar omega_delta = 0.0;  // ||omega_delta(K)||_W
  Scalar delta = 0.0;        // covering radius used (max gap / 2)
};

/// Grid resolution knobs for the kernel-norm sweeps (step on the kernel
/// window; the perturbation grid uses delta/oscillation_substeps).
struct AdmissibilityGrid {
  Scalar kernel_grid_step = 0.05;
  int oscillation_substeps = 8;
};

AdmissibilityReport admissibility_report(const ShiftedFamily& trial,
                                         const ShiftedFamily& test, int L,
                                         const SamplingSet& set,
                                         const TruncatedKernel& kernel,
                                         const QuadratureSpec& spec = {},
                                         const AdmissibilityGrid& grid = {});

/// ||K||_W alone (also used by the self-consistency tests).
Scalar kernel_wiener_norm(const TruncatedKernel& kernel, Scalar grid_step);

/// ||omega_delta(K)||_W by finite differences on the perturbation grid.
Scalar kernel_oscillation_norm(const TruncatedKernel& kernel, Scalar delta,
                               Scalar grid_step, int substeps);

/// L2 norms and distances of signals via Gram closed forms / quadrature.
Scalar l2_norm(const FriSignal& f, const QuadratureSpec& spec = {});
Scalar l2_distance(const FriSignal& a, const FriSignal& b,
                   const QuadratureSpec& spec = {});

/// Pairwise L2 errors of candidates against a reference signal.
std::vector<Scalar> error_metrics(const FriSignal& reference,
                                  const std::vector<FriSignal>& candidates,
                                  const QuadratureSpec& spec = {});

/// Best-approximation error e, Galerkin deviation epsilon = ||z - y||, and
/// the quasi-optimality ratio bound 1 + epsilon / e.
struct QuasiOptimality {
  Scalar e = 0.0;
  Scalar epsilon = 0.0;
  Scalar ratio_bound = 0.0;
};

QuasiOptimality quasi_optimality(const FriSignal& reference,
                                 const FriSignal& best,
                                 const FriSignal& galerkin,
                                 const QuadratureSpec& spec = {});

}  // namespace rkgal
