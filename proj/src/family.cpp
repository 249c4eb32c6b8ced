#include "rkgal/family.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rkgal/errors.hpp"
#include "rkgal/rng.hpp"

namespace rkgal {

ShiftedFamily build_family(const Generator& generator, ShiftMode mode,
                           int window_halfwidth, std::uint64_t seed,
                           Scalar bound) {
  if (window_halfwidth < 1)
    throw WindowMismatch("family window half-width must be >= 1");
  ShiftedFamily family;
  family.generator = generator;
  family.window = IndexWindow{window_halfwidth};
  family.seed = seed;
  family.shifts = Vector::Zero(family.window.size());
  if (mode == ShiftMode::UniformRandom) {
    if (!(bound > 0.0) || bound > 0.5)
      throw InvalidBound("shift bound must lie in (0, 1/2]");
    SeededRng rng(seed);
    for (int k = 0; k < family.window.size(); ++k)
      family.shifts(k) = rng.uniform(-bound, bound);
  }
  return family;
}

FriSignal make_test_signal(const ShiftedFamily& family, CoefficientLaw law,
                           int coeff_halfwidth, std::uint64_t seed) {
  if (coeff_halfwidth < 1)
    throw WindowMismatch("signal window half-width must be >= 1");
  if (coeff_halfwidth > family.window.halfwidth)
    throw WindowMismatch("signal window exceeds the family window");
  FriSignal f;
  f.family = family;
  f.coeff_window = IndexWindow{coeff_halfwidth};
  f.coeffs = Vector::Zero(f.coeff_window.size());
  f.seed = seed;
  if (law == CoefficientLaw::RandomDecay) {
    SeededRng rng(seed);
    for (int i = -coeff_halfwidth; i <= coeff_halfwidth; ++i)
      f.coeffs(f.coeff_window.to_flat(i)) =
          rng.uniform(-1.0, 1.0) / (1.0 + std::abs(i));
  } else {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    for (int i = -coeff_halfwidth; i <= coeff_halfwidth; ++i)
      f.coeffs(f.coeff_window.to_flat(i)) =
          std::cos(pi * i / 8.0) / (1.0 + std::abs(i));
  }
  return f;
}

FriSignal zero_signal(const ShiftedFamily& family, int coeff_halfwidth) {
  if (coeff_halfwidth < 1 || coeff_halfwidth > family.window.halfwidth)
    throw WindowMismatch("signal window must lie inside the family window");
  FriSignal f;
  f.family = family;
  f.coeff_window = IndexWindow{coeff_halfwidth};
  f.coeffs = Vector::Zero(f.coeff_window.size());
  return f;
}

Scalar eval_signal(const FriSignal& f, Scalar t) {
  const Generator& g = f.family.generator;
  const int L = f.coeff_window.halfwidth;
  int lo = -L, hi = L;
  // Only indices whose shifted argument can land inside the active region
  // contribute; |theta_i| <= 1/2.
  const Scalar hw =
      g.support ? g.support->b : (g.kind == GeneratorKind::Gauss
                                      ? g.decay_halfwidth
                                      : std::numeric_limits<Scalar>::infinity());
  if (std::isfinite(hw)) {
    lo = std::max(lo, static_cast<int>(std::ceil(t - hw - 0.5)));
    hi = std::min(hi, static_cast<int>(std::floor(t + hw + 0.5)));
  }
  Scalar acc = 0.0;
  for (int i = lo; i <= hi; ++i)
    acc += f.coeff(i) * eval_generator(g, t - f.family.center(i));
  return acc;
}

Vector eval_signal(const FriSignal& f, const Vector& ts) {
  Vector out(ts.size());
  for (Eigen::Index k = 0; k < ts.size(); ++k) out(k) = eval_signal(f, ts(k));
  return out;
}

}  // namespace rkgal
