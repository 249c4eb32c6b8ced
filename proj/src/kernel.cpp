#include "rkgal/kernel.hpp"

#include <cmath>
#include <limits>

#include "rkgal/errors.hpp"

namespace rkgal {

namespace {

// Index range whose shifted argument can intersect the generator's active
// region at x; conservative by the 1/2 shift bound.
std::pair<int, int> active_index_range(const Generator& g, Scalar x, int L) {
  Scalar hw;
  if (g.support)
    hw = g.support->b;
  else if (g.kind == GeneratorKind::Gauss)
    hw = g.decay_halfwidth;
  else
    return {-L, L};
  const int lo = std::max(-L, static_cast<int>(std::ceil(x - hw - 0.5)));
  const int hi = std::min(L, static_cast<int>(std::floor(x + hw + 0.5)));
  return {lo, hi};
}

}  // namespace

CorrelationMatrix assemble_correlation(const ShiftedFamily& trial,
                                       const ShiftedFamily& test, int L,
                                       const QuadratureSpec& spec) {
  if (L > trial.window.halfwidth || L > test.window.halfwidth)
    throw WindowMismatch("correlation window exceeds a family window");
  CorrelationMatrix out;
  out.trial = trial;
  out.test = test;
  out.window = IndexWindow{L};
  const int n = out.window.size();
  out.entries.resize(n, n);

  if (trial.is_unshifted() && test.is_unshifted()) {
    // Toeplitz: entry depends on i - j only.
    Vector diag(2 * (2 * L) + 1);
    for (int d = -2 * L; d <= 2 * L; ++d)
      diag(d + 2 * L) = correlation(trial.generator, test.generator,
                                    static_cast<Scalar>(d), 0.0, spec);
    for (int i = -L; i <= L; ++i)
      for (int j = -L; j <= L; ++j)
        out.entries(i + L, j + L) = diag(i - j + 2 * L);
    return out;
  }

  for (int i = -L; i <= L; ++i)
    for (int j = -L; j <= L; ++j)
      out.entries(i + L, j + L) = correlation(
          trial.generator, test.generator, trial.center(i), test.center(j),
          spec);
  return out;
}

Matrix gram_matrix(const ShiftedFamily& family, int L,
                   const QuadratureSpec& spec) {
  Matrix g = assemble_correlation(family, family, L, spec).entries;
  return 0.5 * (g + g.transpose());
}

Scalar condition_number(const Matrix& m) {
  if (m.rows() != m.cols())
    throw SingularMatrix("condition number requires a square matrix");
  Eigen::BDCSVD<Matrix> svd(m);
  const Vector& sigma = svd.singularValues();
  const Scalar smax = sigma(0);
  const Scalar smin = sigma(sigma.size() - 1);
  if (!(smin > std::numeric_limits<Scalar>::min()) || !std::isfinite(smax))
    return std::numeric_limits<Scalar>::infinity();
  return smax / smin;
}

Scalar TruncatedKernel::operator()(Scalar x, Scalar y) const {
  return trial_stack(x).dot(kernel_coeffs * test_stack(y));
}

Vector TruncatedKernel::trial_stack(Scalar x) const {
  const int L = padded.halfwidth;
  Vector v = Vector::Zero(padded.size());
  const auto [lo, hi] = active_index_range(trial.generator, x, L);
  for (int i = lo; i <= hi; ++i)
    v(i + L) = eval_generator(trial.generator, x - trial.center(i));
  return v;
}

Vector TruncatedKernel::test_stack(Scalar y) const {
  const int L = padded.halfwidth;
  Vector v = Vector::Zero(padded.size());
  const auto [lo, hi] = active_index_range(test.generator, y, L);
  for (int j = lo; j <= hi; ++j)
    v(j + L) = eval_generator(test.generator, y - test.center(j));
  return v;
}

Matrix TruncatedKernel::trial_stack_rows(const Vector& xs) const {
  return sample_stack(trial, xs, padded.halfwidth);
}

Matrix TruncatedKernel::test_stack_rows(const Vector& ys) const {
  return sample_stack(test, ys, padded.halfwidth);
}

TruncatedKernel build_truncated_kernel(const ShiftedFamily& trial,
                                       const ShiftedFamily& test, int L,
                                       int padding,
                                       const QuadratureSpec& spec) {
  if (padding < 0) throw WindowMismatch("padding must be nonnegative");
  const int Lp = L + padding;
  if (Lp > trial.window.halfwidth || Lp > test.window.halfwidth)
    throw WindowMismatch("padded window exceeds a family window");
  const Matrix a = assemble_correlation(trial, test, Lp, spec).entries;
  const Scalar cond = condition_number(a);
  if (!(cond < 1e12))
    throw SingularCorrelation("padded correlation matrix condition " +
                              std::to_string(cond));
  TruncatedKernel kernel;
  kernel.trial = trial;
  kernel.test = test;
  kernel.padded = IndexWindow{Lp};
  kernel.padding = padding;
  kernel.kernel_coeffs = a.partialPivLu().inverse().transpose();
  return kernel;
}

Vector apply_integral_operator(const TruncatedKernel& kernel,
                               const Vector& values, const UniformGrid& grid) {
  if (grid.count != values.size())
    throw WindowMismatch("grid size does not match the value vector");
  if (grid.step > 0.05) throw GridTooCoarse("grid spacing must be <= 0.05");
  const Generator& tg = kernel.test.generator;
  const Scalar test_hw = tg.support ? tg.support->b : tg.decay_halfwidth;
  const Scalar need = kernel.padded.halfwidth + test_hw;
  if (grid.start > -need || grid.point(grid.count - 1) < need)
    throw WindowMismatch("grid does not cover the kernel's active window");

  Vector w = Vector::Constant(grid.count, grid.step);
  w(0) *= 0.5;
  w(grid.count - 1) *= 0.5;

  const Vector pts = grid.points();
  const Matrix ex = kernel.trial_stack_rows(pts);
  const Matrix ey = kernel.test_stack_rows(pts);
  const Vector d = ey.transpose() * w.cwiseProduct(values).matrix();
  return ex * (kernel.kernel_coeffs * d);
}

Matrix sample_stack(const ShiftedFamily& family, const Vector& points, int L) {
  if (L > family.window.halfwidth)
    throw WindowMismatch("stack window exceeds the family window");
  Matrix m = Matrix::Zero(points.size(), 2 * L + 1);
  for (Eigen::Index n = 0; n < points.size(); ++n) {
    const auto [lo, hi] = active_index_range(family.generator, points(n), L);
    for (int i = lo; i <= hi; ++i)
      m(n, i + L) = eval_generator(family.generator, points(n) - family.center(i));
  }
  return m;
}

}  // namespace rkgal
