#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rkgal/kernel.hpp"
#include "rkgal/sampling.hpp"

namespace rkgal {

/// Sample-sum Galerkin system. matrix(i, j) = sum_n w_n phi(gamma_n - i -
/// theta_i) phit(gamma_n - j - thetat_j) for i in [-L, L], j in [-Lt, Lt];
/// rhs(j) = sum_n w_n f(gamma_n) phit(gamma_n - j - thetat_j). The linear
/// system solved for the coefficients is matrix^T c = rhs.
struct GalerkinSystem {
  Matrix matrix;
  Vector rhs;
  IndexWindow trial_window;
  IndexWindow test_window;
  SamplingSet set;
};

/// The sample-pairing matrix alone (no data); shared with the diagnostics.
Matrix galerkin_matrix(const ShiftedFamily& trial, const ShiftedFamily& test,
                       const SamplingSet& set, int L, int Lt);

GalerkinSystem assemble_system(const ShiftedFamily& trial,
                               const ShiftedFamily& test,
                               const SampleRecord& rec, int L, int Lt);

/// Unique solution of the square Galerkin system (L = Lt). Throws
/// SingularSystem when the matrix condition exceeds 1e12 or the residual
/// contract fails.
Vector solve_galerkin(const GalerkinSystem& sys);

/// Minimum-residual solution of the overdetermined system (Lt >= L).
/// Throws RankDeficient when the matrix loses full column rank.
Vector solve_subgalerkin_lsq(const GalerkinSystem& sys);

/// Oblique projection onto V_{2,L}(trial) preserving pairings against the
/// test family: P f = sum_{i,j} <f, phit_i(.-i)> bt_ij phi_j(.-j) with
/// (bt_ij) the inverse of the correlation block A_{L}.
struct ObliqueProjector {
  ShiftedFamily trial;
  ShiftedFamily test;
  IndexWindow window;
  Matrix inverse_block;
  Matrix correlation_block;
};

ObliqueProjector build_projector(const ShiftedFamily& trial,
                                 const ShiftedFamily& test, int L,
                                 const QuadratureSpec& spec = {});

/// Projection coefficients of a signal (inner products via correlation
/// closed forms / quadrature).
Vector apply_projector(const ObliqueProjector& p, const FriSignal& f,
                       const QuadratureSpec& spec = {});

/// Projection coefficients of a general evaluable; inner products by
/// adaptive quadrature over each test function's active region.
Vector apply_projector(const ObliqueProjector& p,
                       const std::function<Scalar(Scalar)>& f,
                       const QuadratureSpec& spec = {});

struct IterationReport {
  std::vector<Scalar> increment_norms;
  bool converged = false;
  int steps = 0;
  Scalar contraction_estimate = 0.0;
  /// ||A_Gamma A_L^{-1} - I|| in the spectral norm; the iteration is
  /// certified contractive when this is < 1.
  Scalar certified_bound = 0.0;
  /// Same quantity in the induced-infinity norm, for callers that prefer a
  /// rowwise bound.
  Scalar certified_bound_inf = 0.0;
  bool contractive = false;
};

/// Iterative approximation-projection algorithm: coefficient recursion
///   c_{m+1}^T = c_m^T - c_m^T A_Gamma A_L^{-1} + c_0^T,
/// started from c_0^T = rhs^T A_L^{-1} (the projected pre-reconstruction).
/// Runs until ||c_{m+1} - c_m||_2 <= tol or max_iter; throws
/// DivergenceDetected after 50 consecutive growing increments.
std::pair<Vector, IterationReport> iterate_ap(const ShiftedFamily& trial,
                                              const ShiftedFamily& test,
                                              const SampleRecord& rec, int L,
                                              const ObliqueProjector& p,
                                              Scalar tol = 1e-12,
                                              int max_iter = 10000);

/// Largest singular value by power iteration on M^T M (200 steps, relative
/// tolerance 1e-10, deterministic start vector).
Scalar spectral_norm(const Matrix& m, int max_steps = 200, Scalar tol = 1e-10);

}  // namespace rkgal
