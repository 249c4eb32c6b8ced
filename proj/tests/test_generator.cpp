#include <doctest.h>

#include <cmath>
#include <random>

#include "rkgal/generator.hpp"
#include "rkgal/quadrature.hpp"

using namespace rkgal;

namespace {

// Independent Cox-de Boor oracle for the centered cardinal cubic B-spline
// (recursive, knots -2..2). The library evaluates the explicit piecewise
// polynomial; this takes the other route.
double coxdeboor(int k, int degree, double x) {
  const double tk = -2.0 + k;
  if (degree == 0) return (x >= tk && x < tk + 1.0) ? 1.0 : 0.0;
  const double left = (x - tk) / degree * coxdeboor(k, degree - 1, x);
  const double right =
      (tk + degree + 1.0 - x) / degree * coxdeboor(k + 1, degree - 1, x);
  return left + right;
}

double cubic_oracle(double x) { return coxdeboor(0, 3, x); }

}  // namespace

TEST_CASE("sinc generator handles the removable singularity and integer zeros") {
  const Generator g = Generator::sinc();
  CHECK(eval_generator(g, 0.0) == 1.0);
  CHECK(eval_generator(g, 3.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(eval_generator(g, -7.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(eval_generator(g, 0.5) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
}

TEST_CASE("gauss generator matches exp(-3t^2/2)") {
  const Generator g = Generator::gauss();
  CHECK(eval_generator(g, 0.0) == 1.0);
  // frozen: exp(-3/2) to 17 digits
  CHECK(eval_generator(g, 1.0) ==
        doctest::Approx(0.22313016014842982).epsilon(1e-14));
  CHECK(eval_generator(g, -1.0) == eval_generator(g, 1.0));
  CHECK(eval_generator(g, 5.0) > 0.0);
}

TEST_CASE("cubic B-spline matches the Cox-de Boor oracle") {
  const Generator g = Generator::cubic_bspline();
  CHECK(eval_generator(g, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(cubic_oracle(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng);
    CHECK(eval_generator(g, x) == doctest::Approx(cubic_oracle(x)).epsilon(1e-13));
  }
  CHECK(eval_generator(g, 2.0) == 0.0);
  CHECK(eval_generator(g, -2.0) == 0.0);
  CHECK(eval_generator(g, 1.999) > 0.0);
}

TEST_CASE("cubic B-spline: partition of unity and unit integral") {
  const Generator g = Generator::cubic_bspline();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int k = 0; k < 100; ++k) {
    const double t = u(rng);
    double s = 0.0;
    for (int i = static_cast<int>(std::floor(t)) - 3;
         i <= static_cast<int>(std::ceil(t)) + 3; ++i)
      s += eval_generator(g, t - i);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
  const double mass =
      integrate([&](double t) { return eval_generator(g, t); },
                Interval{-2.0, 2.0});
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("indicator generator is the half-open unit box") {
  const Generator g = Generator::indicator();
  CHECK(eval_generator(g, 0.5) == 0.0);
  CHECK(eval_generator(g, -0.5) == 1.0);
  CHECK(eval_generator(g, 0.0) == 1.0);
  CHECK(eval_generator(g, 0.499999) == 1.0);
  CHECK(eval_generator(g, -0.500001) == 0.0);
}

TEST_CASE("sine integral matches high-precision reference values") {
  // frozen with mpmath (30 digits)
  CHECK(sine_integral(M_PI) == doctest::Approx(1.8519370519824661704).epsilon(1e-13));
  CHECK(sine_integral(4.0) == doctest::Approx(1.7582031389490530581).epsilon(1e-13));
  CHECK(sine_integral(60.0) == doctest::Approx(1.5867456162599474123).epsilon(1e-13));
  CHECK(sine_integral(200.5) == doctest::Approx(1.5665891981879854027).epsilon(1e-13));
  CHECK(sine_integral(-7.25) == doctest::Approx(-1.4806844124588580557).epsilon(1e-13));
  CHECK(sine_integral(0.0) == 0.0);
  // oddness across the quadrature/asymptotic switch
  for (double x : {0.3, 12.0, 59.9, 60.1, 500.0})
    CHECK(sine_integral(-x) == doctest::Approx(-sine_integral(x)).epsilon(1e-15));
}

TEST_CASE("degree-7 cardinal B-spline matches reference values") {
  // frozen with mpmath: autocorrelation of the cubic B-spline
  CHECK(cardinal_bspline(7, 0.0) ==
        doctest::Approx(0.47936507936507937).epsilon(1e-13));
  CHECK(cardinal_bspline(7, 0.5) ==
        doctest::Approx(0.40259641617063492).epsilon(1e-13));
  CHECK(cardinal_bspline(7, 1.0) ==
        doctest::Approx(0.23630952380952381).epsilon(1e-13));
  CHECK(cardinal_bspline(7, 2.5) ==
        doctest::Approx(0.0033776661706349206).epsilon(1e-12));
  CHECK(cardinal_bspline(7, -3.3) ==
        doctest::Approx(1.6340138888888889e-5).epsilon(1e-10));
  CHECK(cardinal_bspline(7, 4.0) == 0.0);
  CHECK(cardinal_bspline(7, -4.2) == 0.0);
}

TEST_CASE("degree-3 cardinal B-spline agrees with the generator evaluation") {
  const Generator g = Generator::cubic_bspline();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int k = 0; k < 100; ++k) {
    const double x = u(rng);
    CHECK(cardinal_bspline(3, x) ==
          doctest::Approx(eval_generator(g, x)).epsilon(1e-13));
  }
}
