#include "rkgal/generator.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rkgal/errors.hpp"
#include "rkgal/quadrature.hpp"

namespace rkgal {

namespace {

constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

Scalar sinc(Scalar t) {
  if (t == 0.0) return 1.0;
  const Scalar pt = kPi * t;
  return std::sin(pt) / pt;
}

// Centered cardinal cubic B-spline, support [-2, 2], unit integral, B(0)=2/3.
Scalar cubic_bspline(Scalar t) {
  const Scalar a = std::abs(t);
  if (a >= 2.0) return 0.0;
  if (a <= 1.0) return 2.0 / 3.0 - a * a + a * a * a / 2.0;
  const Scalar u = 2.0 - a;
  return u * u * u / 6.0;
}

}  // namespace

Generator Generator::make(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Sinc:
      return sinc();
    case GeneratorKind::Gauss:
      return gauss();
    case GeneratorKind::CubicBSpline:
      return cubic_bspline();
    case GeneratorKind::Indicator:
      return indicator();
  }
  throw Error("InvalidGenerator", "unknown kind");
}

Scalar eval_generator(const Generator& g, Scalar t) {
  switch (g.kind) {
    case GeneratorKind::Sinc:
      return sinc(t);
    case GeneratorKind::Gauss:
      return std::exp(-1.5 * t * t);
    case GeneratorKind::CubicBSpline:
      return cubic_bspline(t);
    case GeneratorKind::Indicator:
      return (t >= -0.5 && t < 0.5) ? 1.0 : 0.0;
  }
  return 0.0;
}

Scalar cardinal_bspline(int degree, Scalar x) {
  const int order = degree + 1;
  const Scalar left = -0.5 * order;
  if (x < left || x > -left) return 0.0;
  // Knots t_k = left + k, k = 0..order. Start from the order-1 indicators and
  // run the Cox-de Boor recursion in place; only convex combinations, stable.
  std::array<Scalar, 32> values{};
  for (int k = 0; k < order; ++k) {
    const Scalar tk = left + k;
    values[static_cast<std::size_t>(k)] =
        (x >= tk && x < tk + 1.0) ? 1.0 : 0.0;
  }
  if (x == -left) values[static_cast<std::size_t>(order - 1)] = 1.0;
  for (int r = 1; r <= degree; ++r) {
    for (int k = 0; k + r < order; ++k) {
      const Scalar tk = left + k;
      const Scalar w1 = (x - tk) / r;
      const Scalar w2 = (tk + r + 1.0 - x) / r;
      values[static_cast<std::size_t>(k)] =
          w1 * values[static_cast<std::size_t>(k)] +
          w2 * values[static_cast<std::size_t>(k + 1)];
    }
  }
  return values[0];
}

Scalar sine_integral(Scalar x) {
  const Scalar ax = std::abs(x);
  if (ax <= 60.0) {
    QuadratureSpec tight;
    tight.abs_tol = 1e-14;
    tight.rel_tol = 1e-14;
    const Scalar v = integrate([](Scalar t) { return sinc(t / kPi); },
                               Interval{0.0, ax}, tight);
    return std::copysign(v, x);
  }
  // Asymptotic auxiliary expansion: Si(x) = pi/2 - f(x)cos(x) - g(x)sin(x),
  // f ~ (1/x) sum (-1)^k (2k)!/x^{2k}, g ~ (1/x^2) sum (-1)^k (2k+1)!/x^{2k}.
  // Truncation below 1e-17 for |x| > 60 with 12 terms.
  Scalar f = 0.0, gsum = 0.0;
  Scalar term_f = 1.0, term_g = 1.0;
  const Scalar inv2 = 1.0 / (ax * ax);
  for (int k = 0; k <= 11; ++k) {
    f += term_f;
    gsum += term_g;
    term_f *= -(2.0 * k + 1.0) * (2.0 * k + 2.0) * inv2;
    term_g *= -(2.0 * k + 2.0) * (2.0 * k + 3.0) * inv2;
  }
  f /= ax;
  gsum *= inv2;
  const Scalar v = 0.5 * kPi - f * std::cos(ax) - gsum * std::sin(ax);
  return std::copysign(v, x);
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Sinc:
      return "sinc";
    case GeneratorKind::Gauss:
      return "gauss";
    case GeneratorKind::CubicBSpline:
      return "spline";
    case GeneratorKind::Indicator:
      return "indicator";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  if (name == "sinc") return GeneratorKind::Sinc;
  if (name == "gauss") return GeneratorKind::Gauss;
  if (name == "spline") return GeneratorKind::CubicBSpline;
  if (name == "indicator") return GeneratorKind::Indicator;
  throw ParseError("unknown generator kind '" + name + "'");
}

}  // namespace rkgal
