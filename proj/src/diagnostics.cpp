#include "rkgal/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rkgal/errors.hpp"

namespace rkgal {

namespace {

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix checked_gram(const ShiftedFamily& family, int L,
                    const QuadratureSpec& spec) {
  const Matrix g = gram_matrix(family, L, spec);
  const Scalar cond = condition_number(g);
  if (!(cond < 1e12))
    throw SingularGram("Gram matrix condition " + std::to_string(cond));
  return g;
}

// Extreme generalized eigenvalues of the pencil (Q, G), G positive definite.
std::pair<Scalar, Scalar> extremal_eigenvalues(const Matrix& q,
                                               const Matrix& g) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(
      symmetrize(q), symmetrize(g),
      Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
    throw SingularGram("generalized eigensolver failed");
  const Vector& ev = solver.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

// Active interval of the i-th basis function, capped by the quadrature window.
Interval basis_active(const ShiftedFamily& family, int i,
                      const QuadratureSpec& spec) {
  const Generator& g = family.generator;
  const Scalar c = family.center(i);
  if (g.support) return {c + g.support->a, c + g.support->b};
  const Scalar hw = std::min(g.decay_halfwidth, spec.infinite_window);
  return {c - hw, c + hw};
}

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  std::vector<Interval> out;
  std::sort(v.begin(), v.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (const Interval& iv : v) {
    if (iv.empty()) continue;
    if (!out.empty() && iv.a <= out.back().b)
      out.back().b = std::max(out.back().b, iv.b);
    else
      out.push_back(iv);
  }
  return out;
}

// Cap on how far beyond the padded window the grid sweeps follow a
// non-compactly-supported generator. Values remain grid-truncation
// estimates and are flagged approximate.
Scalar sweep_halfwidth(const Generator& g) {
  return g.support ? g.support->b : std::min(g.decay_halfwidth, 10.0);
}

}  // namespace

BestApproximation best_approximation(const FriSignal& x,
                                     const ShiftedFamily& trial, int L,
                                     const QuadratureSpec& spec) {
  const Matrix g = checked_gram(trial, L, spec);
  Vector b(2 * L + 1);
  for (int i = -L; i <= L; ++i) {
    Scalar acc = 0.0;
    for (int k = -x.coeff_window.halfwidth; k <= x.coeff_window.halfwidth; ++k)
      acc += x.coeff(k) * correlation(x.family.generator, trial.generator,
                                      x.family.center(k), trial.center(i),
                                      spec);
    b(i + L) = acc;
  }
  BestApproximation out;
  out.coeffs = g.ldlt().solve(b);
  const Scalar norm = l2_norm(x, spec);
  const Scalar err2 =
      norm * norm - 2.0 * b.dot(out.coeffs) + out.coeffs.dot(g * out.coeffs);
  out.error = std::sqrt(std::max(err2, 0.0));
  return out;
}

BestApproximation best_approximation(const std::function<Scalar(Scalar)>& x,
                                     Interval domain,
                                     const ShiftedFamily& trial, int L,
                                     const QuadratureSpec& spec) {
  const Matrix g = checked_gram(trial, L, spec);
  Vector b(2 * L + 1);
  for (int i = -L; i <= L; ++i) {
    const Interval active = basis_active(trial, i, spec);
    const Interval dom{std::max(active.a, domain.a),
                       std::min(active.b, domain.b)};
    b(i + L) =
        dom.empty()
            ? 0.0
            : integrate(
                  [&](Scalar t) {
                    return x(t) * eval_generator(trial.generator,
                                                 t - trial.center(i));
                  },
                  dom, spec);
  }
  BestApproximation out;
  out.coeffs = g.ldlt().solve(b);
  const Scalar norm2 =
      integrate([&](Scalar t) { const Scalar v = x(t); return v * v; },
                domain, spec);
  const Scalar err2 =
      norm2 - 2.0 * b.dot(out.coeffs) + out.coeffs.dot(g * out.coeffs);
  out.error = std::sqrt(std::max(err2, 0.0));
  return out;
}

StabilityReport stability_bounds(const ShiftedFamily& trial, int L,
                                 const SamplingSet& set,
                                 const QuadratureSpec& spec) {
  const Matrix g = checked_gram(trial, L, spec);
  StabilityReport report;
  if (set.size() == 0) {
    report.degenerate = true;
    report.ratio = std::numeric_limits<Scalar>::infinity();
    return report;
  }
  const Matrix phi = sample_stack(trial, set.abscissae, L);
  const Matrix q = phi.transpose() * set.weights.asDiagonal() * phi;
  const auto [lo, hi] = extremal_eigenvalues(q, g);
  report.C1 = std::sqrt(std::max(lo, 0.0));
  report.C2 = std::sqrt(std::max(hi, 0.0));
  report.degenerate = !(report.C1 > 0.0);
  report.ratio = report.degenerate
                     ? std::numeric_limits<Scalar>::infinity()
                     : report.C2 / report.C1;
  return report;
}

Scalar residue(const ShiftedFamily& trial, int L,
               const std::vector<Interval>& F, const QuadratureSpec& spec) {
  const Matrix g = checked_gram(trial, L, spec);
  const std::vector<Interval> merged = merge_intervals(F);
  const int n = 2 * L + 1;
  Matrix inside = Matrix::Zero(n, n);
  for (int i = -L; i <= L; ++i) {
    const Interval ai = basis_active(trial, i, spec);
    for (int j = i; j <= L; ++j) {
      const Interval aj = basis_active(trial, j, spec);
      Interval common{std::max(ai.a, aj.a), std::min(ai.b, aj.b)};
      if (common.empty()) continue;
      Scalar acc = 0.0;
      for (const Interval& iv : merged) {
        const Interval dom{std::max(common.a, iv.a), std::min(common.b, iv.b)};
        if (dom.empty()) continue;
        acc += integrate(
            [&](Scalar t) {
              return eval_generator(trial.generator, t - trial.center(i)) *
                     eval_generator(trial.generator, t - trial.center(j));
            },
            dom, spec);
      }
      inside(i + L, j + L) = acc;
      inside(j + L, i + L) = acc;
    }
  }
  const Matrix outside = symmetrize(g - inside);
  const auto [lo, hi] = extremal_eigenvalues(outside, g);
  (void)lo;
  return std::sqrt(std::clamp(hi, 0.0, 1.0));
}

Scalar kernel_wiener_norm(const TruncatedKernel& kernel, Scalar grid_step) {
  const Scalar lp = kernel.padded.halfwidth;
  const Scalar xw = lp + sweep_halfwidth(kernel.trial.generator);
  const Scalar yw = lp + sweep_halfwidth(kernel.test.generator);
  const UniformGrid gx = cover_interval(-xw, xw, grid_step);
  const UniformGrid gy = cover_interval(-yw, yw, grid_step);

  const Matrix ex = kernel.trial_stack_rows(gx.points());
  const Matrix ey = kernel.test_stack_rows(gy.points());
  const Matrix values = (ex * kernel.kernel_coeffs * ey.transpose()).cwiseAbs();

  Vector wy = Vector::Constant(gy.count, gy.step);
  wy(0) *= 0.5;
  wy(gy.count - 1) *= 0.5;
  Vector wx = Vector::Constant(gx.count, gx.step);
  wx(0) *= 0.5;
  wx(gx.count - 1) *= 0.5;

  Scalar max_row = 0.0;
  for (int r = 0; r < gx.count; ++r)
    max_row = std::max(
        max_row, pairwise_sum(values.row(r).transpose().cwiseProduct(wy)));
  Scalar max_col = 0.0;
  for (int c = 0; c < gy.count; ++c)
    max_col =
        std::max(max_col, pairwise_sum(values.col(c).cwiseProduct(wx)));
  return std::max(max_row, max_col);
}

Scalar kernel_oscillation_norm(const TruncatedKernel& kernel, Scalar delta,
                               Scalar grid_step, int substeps) {
  if (!(delta > 0.0)) return 0.0;
  const Scalar lp = kernel.padded.halfwidth;
  const Scalar xw = lp + sweep_halfwidth(kernel.trial.generator);
  const Scalar yw = lp + sweep_halfwidth(kernel.test.generator);
  const UniformGrid gx = cover_interval(-xw, xw, grid_step);
  const UniformGrid gy = cover_interval(-yw, yw, grid_step);
  const int np = 2 * substeps + 1;  // perturbations -delta ... delta
  const Scalar pstep = delta / substeps;

  // Test-side evaluations at every perturbed y, blocked row-major by y.
  Vector ys(static_cast<Eigen::Index>(gy.count) * np);
  for (int y = 0; y < gy.count; ++y)
    for (int q = 0; q < np; ++q)
      ys(static_cast<Eigen::Index>(y) * np + q) =
          gy.point(y) + (q - substeps) * pstep;
  const Matrix ey = kernel.test_stack_rows(ys);

  Vector wy = Vector::Constant(gy.count, gy.step);
  wy(0) *= 0.5;
  wy(gy.count - 1) *= 0.5;
  Vector wx = Vector::Constant(gx.count, gx.step);
  wx(0) *= 0.5;
  wx(gx.count - 1) *= 0.5;

  Vector col_integral = Vector::Zero(gy.count);
  Scalar max_row = 0.0;
  Vector xs(np);
  for (int x = 0; x < gx.count; ++x) {
    for (int p = 0; p < np; ++p) xs(p) = gx.point(x) + (p - substeps) * pstep;
    const Matrix coeffs =
        kernel.trial_stack_rows(xs) * kernel.kernel_coeffs;  // np x basis
    const Matrix v = coeffs * ey.transpose();                // np x (Ny*np)
    Vector osc(gy.count);
    for (int y = 0; y < gy.count; ++y) {
      const Scalar ref = v(substeps, static_cast<Eigen::Index>(y) * np + substeps);
      Scalar m = 0.0;
      for (int p = 0; p < np; ++p)
        for (int q = 0; q < np; ++q)
          m = std::max(m, std::abs(v(p, static_cast<Eigen::Index>(y) * np + q) -
                                   ref));
      osc(y) = m;
    }
    max_row = std::max(max_row, pairwise_sum(osc.cwiseProduct(wy)));
    col_integral += wx(x) * osc;
  }
  return std::max(max_row, col_integral.maxCoeff());
}

AdmissibilityReport admissibility_report(const ShiftedFamily& trial,
                                         const ShiftedFamily& test, int L,
                                         const SamplingSet& set,
                                         const TruncatedKernel& kernel,
                                         const QuadratureSpec& spec,
                                         const AdmissibilityGrid& grid) {
  AdmissibilityReport report;
  report.delta = set.delta();

  const Matrix g = checked_gram(trial, L, spec);
  const Matrix gt = checked_gram(test, L, spec);
  const Matrix cross = assemble_correlation(trial, test, L, spec).entries;
  const Matrix a_gamma = galerkin_matrix(trial, test, set, L, L);

  const auto gt_ldlt = symmetrize(gt).ldlt();
  const Matrix cross_form = cross * gt_ldlt.solve(cross.transpose());
  const auto [d4sq, d4hi] = extremal_eigenvalues(cross_form, g);
  (void)d4hi;
  report.D4 = std::sqrt(std::max(d4sq, 0.0));

  const Matrix pairing_form = a_gamma * gt_ldlt.solve(a_gamma.transpose());
  const auto [d1sq, d2sq] = extremal_eigenvalues(pairing_form, g);
  report.D1 = std::sqrt(std::max(d1sq, 0.0));
  report.D2 = std::sqrt(std::max(d2sq, 0.0));

  std::vector<Interval> balls;
  balls.reserve(static_cast<std::size_t>(set.size()));
  for (int n = 0; n < set.size(); ++n)
    balls.push_back(
        {set.abscissae(n) - report.delta, set.abscissae(n) + report.delta});
  report.residue = residue(trial, L, balls, spec);

  report.kernel_norm = kernel_wiener_norm(kernel, grid.kernel_grid_step);
  report.omega_delta = kernel_oscillation_norm(
      kernel, report.delta, grid.kernel_grid_step, grid.oscillation_substeps);

  if (report.D4 > 0.0)
    report.r0 = (report.residue * report.kernel_norm +
                 report.omega_delta * (1.0 + report.kernel_norm +
                                       report.omega_delta)) /
                report.D4;
  else
    report.r0 = std::numeric_limits<Scalar>::infinity();
  return report;
}

Scalar l2_norm(const FriSignal& f, const QuadratureSpec& spec) {
  const Matrix g = gram_matrix(f.family, f.coeff_window.halfwidth, spec);
  const Scalar sq = f.coeffs.dot(g * f.coeffs);
  return std::sqrt(std::max(sq, 0.0));
}

namespace {

// Signals over matching shift lattices subtract coefficientwise, avoiding the
// cancellation of the norm/cross-term route.
bool shares_lattice(const FriSignal& a, const FriSignal& b, int L) {
  if (a.family.generator.kind != b.family.generator.kind) return false;
  if (a.family.window.halfwidth < L || b.family.window.halfwidth < L)
    return false;
  for (int i = -L; i <= L; ++i)
    if (a.family.shift(i) != b.family.shift(i)) return false;
  return true;
}

}  // namespace

Scalar l2_distance(const FriSignal& a, const FriSignal& b,
                   const QuadratureSpec& spec) {
  const int la = a.coeff_window.halfwidth;
  const int lb = b.coeff_window.halfwidth;
  const int lu = std::max(la, lb);
  if (shares_lattice(a, b, lu)) {
    Vector diff = Vector::Zero(2 * lu + 1);
    for (int i = -la; i <= la; ++i) diff(i + lu) += a.coeff(i);
    for (int i = -lb; i <= lb; ++i) diff(i + lu) -= b.coeff(i);
    const Matrix g = gram_matrix(a.family, lu, spec);
    return std::sqrt(std::max(diff.dot(g * diff), 0.0));
  }
  Matrix cross(2 * la + 1, 2 * lb + 1);
  for (int i = -la; i <= la; ++i)
    for (int k = -lb; k <= lb; ++k)
      cross(i + la, k + lb) =
          correlation(a.family.generator, b.family.generator,
                      a.family.center(i), b.family.center(k), spec);
  const Scalar na = l2_norm(a, spec);
  const Scalar nb = l2_norm(b, spec);
  const Scalar sq =
      na * na - 2.0 * a.coeffs.dot(cross * b.coeffs) + nb * nb;
  return std::sqrt(std::max(sq, 0.0));
}

std::vector<Scalar> error_metrics(const FriSignal& reference,
                                  const std::vector<FriSignal>& candidates,
                                  const QuadratureSpec& spec) {
  std::vector<Scalar> out;
  out.reserve(candidates.size());
  for (const FriSignal& c : candidates)
    out.push_back(l2_distance(reference, c, spec));
  return out;
}

QuasiOptimality quasi_optimality(const FriSignal& reference,
                                 const FriSignal& best,
                                 const FriSignal& galerkin,
                                 const QuadratureSpec& spec) {
  QuasiOptimality q;
  q.e = l2_distance(reference, best, spec);
  q.epsilon = l2_distance(galerkin, best, spec);
  if (q.e > 0.0)
    q.ratio_bound = 1.0 + q.epsilon / q.e;
  else
    q.ratio_bound = q.epsilon == 0.0
                        ? 1.0
                        : std::numeric_limits<Scalar>::infinity();
  return q;
}

}  // namespace rkgal
