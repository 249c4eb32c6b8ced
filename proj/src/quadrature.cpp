#include "rkgal/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace rkgal {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  if (max_subdivisions <= 0)
    throw std::invalid_argument("max_subdivisions must be positive");
  if (!(infinite_window >= 10.0))
    throw std::invalid_argument("infinite_window must be >= 10");
}

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (positive abscissae).
constexpr Scalar kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr Scalar kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr Scalar kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct PanelResult {
  Scalar integral = 0.0;
  Scalar error = 0.0;
};

PanelResult gauss_kronrod_15(const Integrand& f, Scalar a, Scalar b) {
  const Scalar center = 0.5 * (a + b);
  const Scalar halflen = 0.5 * (b - a);

  Scalar fv[15];
  fv[7] = f(center);
  for (int i = 0; i < 7; ++i) {
    const Scalar dx = halflen * kXgk[i];
    fv[i] = f(center - dx);
    fv[14 - i] = f(center + dx);
  }

  Scalar resk = kWgk[7] * fv[7];
  Scalar resg = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }

  // QUADPACK-style scaled error estimate.
  const Scalar reskh = 0.5 * resk;
  Scalar resasc = kWgk[7] * std::abs(fv[7] - reskh);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] *
              (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
  resasc *= halflen;

  Scalar err = std::abs(resk - resg) * halflen;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));

  return {resk * halflen, err};
}

struct Panel {
  Scalar a, b;
  Scalar integral, error;
  int id;  // insertion order; deterministic tie-break
};

struct PanelOrder {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.id > rhs.id;
  }
};

}  // namespace

Scalar integrate(const Integrand& f, Interval domain,
                 const QuadratureSpec& spec) {
  spec.validate();
  if (!(domain.a < domain.b)) return 0.0;

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  PanelResult first = gauss_kronrod_15(f, domain.a, domain.b);
  Scalar total = first.integral;
  Scalar total_err = first.error;
  int next_id = 0;
  queue.push(Panel{domain.a, domain.b, first.integral, first.error, next_id++});

  int subdivisions = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (subdivisions >= spec.max_subdivisions)
      throw SubdivisionLimitExceeded("adaptive refinement exhausted after " +
                                     std::to_string(subdivisions) +
                                     " subdivisions");
    const Panel worst = queue.top();
    queue.pop();
    const Scalar mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw SubdivisionLimitExceeded("panel width reached machine precision");
    const PanelResult left = gauss_kronrod_15(f, worst.a, mid);
    const PanelResult right = gauss_kronrod_15(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    queue.push(Panel{worst.a, mid, left.integral, left.error, next_id++});
    queue.push(Panel{mid, worst.b, right.integral, right.error, next_id++});
    ++subdivisions;
  }
  return total;
}

Scalar integrate_line(const Integrand& f, Scalar center,
                      const QuadratureSpec& spec) {
  const Scalar w = spec.infinite_window;
  return integrate(f, Interval{center - w, center + w}, spec);
}

Scalar pairwise_sum(const Vector& v) {
  const auto n = v.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    Scalar s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += v(i);
    return s;
  }
  const auto half = n / 2;
  return pairwise_sum(v.head(half)) + pairwise_sum(v.tail(n - half));
}

}  // namespace rkgal
