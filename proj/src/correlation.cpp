#include "rkgal/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rkgal {

namespace {

constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

// Active interval of g(. - shift): exact support when available, otherwise
// the decay half-width capped by the quadrature window.
Interval active_interval(const Generator& g, Scalar shift,
                         const QuadratureSpec& spec) {
  if (g.support)
    return {shift + g.support->a, shift + g.support->b};
  const Scalar w = std::min(g.decay_halfwidth, spec.infinite_window);
  return {shift - w, shift + w};
}

Scalar sinc_value(Scalar t) {
  if (t == 0.0) return 1.0;
  const Scalar pt = kPi * t;
  return std::sin(pt) / pt;
}

// Antiderivative of the cubic B-spline: int_{-2}^{x} B3(u) du.
Scalar cubic_bspline_antiderivative(Scalar x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  if (x <= -1.0) {
    const Scalar u = 2.0 + x;
    return u * u * u * u / 24.0;
  }
  if (x <= 0.0)
    return 0.5 + 2.0 * x / 3.0 - x * x * x / 3.0 - x * x * x * x / 8.0;
  if (x <= 1.0)
    return 0.5 + 2.0 * x / 3.0 - x * x * x / 3.0 + x * x * x * x / 8.0;
  const Scalar u = 2.0 - x;
  return 1.0 - u * u * u * u / 24.0;
}

// Closed forms as functions of the shift difference s = a - b, i.e.
// C(s) = int g(u) gt(u + s) du.
Scalar closed_form(GeneratorKind g, GeneratorKind gt, Scalar s) {
  using K = GeneratorKind;
  if (g == K::Sinc && gt == K::Sinc) return sinc_value(s);
  if (g == K::Gauss && gt == K::Gauss)
    return std::sqrt(kPi / 3.0) * std::exp(-0.75 * s * s);
  if (g == K::Sinc && gt == K::Indicator)
    // int_{-s-1/2}^{-s+1/2} sinc = (Si(pi(-s+1/2)) - Si(pi(-s-1/2))) / pi
    return (sine_integral(kPi * (-s + 0.5)) -
            sine_integral(kPi * (-s - 0.5))) /
           kPi;
  if (g == K::CubicBSpline && gt == K::Indicator)
    return cubic_bspline_antiderivative(-s + 0.5) -
           cubic_bspline_antiderivative(-s - 0.5);
  if (g == K::CubicBSpline && gt == K::CubicBSpline)
    // autocorrelation of the cubic B-spline is the degree-7 cardinal B-spline
    return cardinal_bspline(7, s);
  return std::numeric_limits<Scalar>::quiet_NaN();
}

}  // namespace

bool correlation_has_closed_form(GeneratorKind g, GeneratorKind gt) {
  using K = GeneratorKind;
  auto direct = [](K x, K y) {
    return (x == K::Sinc && y == K::Sinc) || (x == K::Gauss && y == K::Gauss) ||
           (x == K::Sinc && y == K::Indicator) ||
           (x == K::CubicBSpline && y == K::Indicator) ||
           (x == K::CubicBSpline && y == K::CubicBSpline);
  };
  return direct(g, gt) || direct(gt, g);
}

Scalar correlation_quadrature(const Generator& g, const Generator& gt,
                              Scalar a, Scalar b, const QuadratureSpec& spec) {
  const Interval ia = active_interval(g, a, spec);
  const Interval ib = active_interval(gt, b, spec);
  const Interval domain{std::max(ia.a, ib.a), std::min(ia.b, ib.b)};
  if (domain.empty()) return 0.0;
  return integrate(
      [&](Scalar t) { return eval_generator(g, t - a) * eval_generator(gt, t - b); },
      domain, spec);
}

Scalar correlation(const Generator& g, const Generator& gt, Scalar a, Scalar b,
                   const QuadratureSpec& spec) {
  const Scalar direct = closed_form(g.kind, gt.kind, a - b);
  if (!std::isnan(direct)) return direct;
  // <g(.-a), gt(.-b)> = <gt(.-b), g(.-a)>
  const Scalar swapped = closed_form(gt.kind, g.kind, b - a);
  if (!std::isnan(swapped)) return swapped;
  return correlation_quadrature(g, gt, a, b, spec);
}

}  // namespace rkgal
