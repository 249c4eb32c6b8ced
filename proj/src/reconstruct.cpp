#include "rkgal/reconstruct.hpp"

#include <cmath>
#include <limits>

#include "rkgal/errors.hpp"

namespace rkgal {

Matrix galerkin_matrix(const ShiftedFamily& trial, const ShiftedFamily& test,
                       const SamplingSet& set, int L, int Lt) {
  if (set.size() == 0) throw EmptySampleSet("sampling set is empty");
  const Matrix phi = sample_stack(trial, set.abscissae, L);
  const Matrix phit = sample_stack(test, set.abscissae, Lt);
  return phi.transpose() * set.weights.asDiagonal() * phit;
}

GalerkinSystem assemble_system(const ShiftedFamily& trial,
                               const ShiftedFamily& test,
                               const SampleRecord& rec, int L, int Lt) {
  if (rec.set.size() == 0) throw EmptySampleSet("sample record is empty");
  if (rec.values.size() != rec.set.abscissae.size())
    throw WindowMismatch("sample values do not match the abscissae");
  GalerkinSystem sys;
  sys.trial_window = IndexWindow{L};
  sys.test_window = IndexWindow{Lt};
  sys.set = rec.set;
  sys.matrix = galerkin_matrix(trial, test, rec.set, L, Lt);
  const Matrix phit = sample_stack(test, rec.set.abscissae, Lt);
  sys.rhs =
      phit.transpose() * rec.set.weights.cwiseProduct(rec.values).matrix();
  return sys;
}

Vector solve_galerkin(const GalerkinSystem& sys) {
  if (sys.trial_window.halfwidth != sys.test_window.halfwidth)
    throw WindowMismatch("square solve requires L = Ltilde");
  const Scalar cond = condition_number(sys.matrix);
  if (!(cond < 1e12))
    throw SingularSystem("Galerkin matrix condition " + std::to_string(cond));
  const Matrix at = sys.matrix.transpose();
  const Vector c = at.partialPivLu().solve(sys.rhs);
  const Scalar residual = (at * c - sys.rhs).norm();
  const Scalar scale = at.norm() * c.norm() + sys.rhs.norm();
  if (residual > 1e-10 * scale)
    throw SingularSystem("solve residual " + std::to_string(residual) +
                         " exceeds contract");
  return c;
}

Vector solve_subgalerkin_lsq(const GalerkinSystem& sys) {
  const int L = sys.trial_window.halfwidth;
  if (sys.test_window.halfwidth < L)
    throw WindowMismatch("least squares requires Ltilde >= L");
  const Matrix at = sys.matrix.transpose();
  Eigen::ColPivHouseholderQR<Matrix> qr(at);
  qr.setThreshold(1e-12);
  if (qr.rank() < at.cols())
    throw RankDeficient("system matrix has column rank " +
                        std::to_string(qr.rank()));
  return qr.solve(sys.rhs);
}

ObliqueProjector build_projector(const ShiftedFamily& trial,
                                 const ShiftedFamily& test, int L,
                                 const QuadratureSpec& spec) {
  const Matrix a = assemble_correlation(trial, test, L, spec).entries;
  const Scalar cond = condition_number(a);
  if (!(cond < 1e12))
    throw SingularCorrelation("correlation block condition " +
                              std::to_string(cond));
  ObliqueProjector p;
  p.trial = trial;
  p.test = test;
  p.window = IndexWindow{L};
  p.correlation_block = a;
  p.inverse_block = a.partialPivLu().inverse();
  return p;
}

Vector apply_projector(const ObliqueProjector& p, const FriSignal& f,
                       const QuadratureSpec& spec) {
  const int L = p.window.halfwidth;
  Vector pairings(p.window.size());
  for (int i = -L; i <= L; ++i) {
    Scalar acc = 0.0;
    for (int k = -f.coeff_window.halfwidth; k <= f.coeff_window.halfwidth; ++k)
      acc += f.coeff(k) * correlation(f.family.generator, p.test.generator,
                                      f.family.center(k), p.test.center(i),
                                      spec);
    pairings(i + L) = acc;
  }
  return p.inverse_block.transpose() * pairings;
}

Vector apply_projector(const ObliqueProjector& p,
                       const std::function<Scalar(Scalar)>& f,
                       const QuadratureSpec& spec) {
  const int L = p.window.halfwidth;
  const Generator& tg = p.test.generator;
  const Scalar hw = tg.support
                        ? tg.support->b
                        : std::min(tg.decay_halfwidth, spec.infinite_window);
  Vector pairings(p.window.size());
  for (int i = -L; i <= L; ++i) {
    const Scalar c = p.test.center(i);
    pairings(i + L) = integrate(
        [&](Scalar t) { return f(t) * eval_generator(tg, t - c); },
        Interval{c - hw, c + hw}, spec);
  }
  return p.inverse_block.transpose() * pairings;
}

Scalar spectral_norm(const Matrix& m, int max_steps, Scalar tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  // Deterministic start with a mild ramp so symmetric sign patterns cannot
  // leave it orthogonal to the leading singular direction.
  Vector v(m.cols());
  for (Eigen::Index k = 0; k < v.size(); ++k)
    v(k) = 1.0 + 1e-3 * static_cast<Scalar>(k);
  v.normalize();
  Scalar lambda = 0.0;
  for (int step = 0; step < max_steps; ++step) {
    Vector w = m.transpose() * (m * v);
    const Scalar norm = w.norm();
    if (norm == 0.0) return 0.0;
    w /= norm;
    const Scalar next = w.dot(m.transpose() * (m * w));
    if (std::abs(next - lambda) <= tol * std::max(next, Scalar{1e-300})) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

std::pair<Vector, IterationReport> iterate_ap(const ShiftedFamily& trial,
                                              const ShiftedFamily& test,
                                              const SampleRecord& rec, int L,
                                              const ObliqueProjector& p,
                                              Scalar tol, int max_iter) {
  if (p.window.halfwidth != L)
    throw WindowMismatch("projector window must match L");
  const GalerkinSystem sys = assemble_system(trial, test, rec, L, L);
  const Matrix iteration = sys.matrix * p.inverse_block;
  const Matrix deviation = iteration - Matrix::Identity(iteration.rows(),
                                                        iteration.cols());
  IterationReport report;
  report.certified_bound = spectral_norm(deviation);
  report.certified_bound_inf = deviation.cwiseAbs().rowwise().sum().maxCoeff();
  report.contractive = report.certified_bound < 1.0;

  // c_{m+1}^T = c_m^T (I - A_Gamma A_L^{-1}) + c_0^T
  const Vector c0 = p.inverse_block.transpose() * sys.rhs;
  Vector c = c0;
  int growing_streak = 0;
  Scalar prev_inc = std::numeric_limits<Scalar>::infinity();
  for (int m = 0; m < max_iter; ++m) {
    const Vector next = c - iteration.transpose() * c + c0;
    const Scalar inc = (next - c).norm();
    report.increment_norms.push_back(inc);
    c = next;
    report.steps = m + 1;
    if (inc <= tol) {
      report.converged = true;
      break;
    }
    if (inc > prev_inc) {
      if (++growing_streak >= 50)
        throw DivergenceDetected(
            "increments grew over 50 consecutive steps (certified bound " +
            std::to_string(report.certified_bound) + ")");
    } else {
      growing_streak = 0;
    }
    prev_inc = inc;
  }
  const auto& inc = report.increment_norms;
  if (inc.size() >= 2 && inc.front() > 0.0 && inc.back() > 0.0)
    report.contraction_estimate =
        std::pow(inc.back() / inc.front(),
                 1.0 / static_cast<Scalar>(inc.size() - 1));
  return {c, report};
}

}  // namespace rkgal
