#pragma once

#include <cstdint>

#include "rkgal/generator.hpp"
#include "rkgal/types.hpp"

namespace rkgal {

enum class ShiftMode { Zero, UniformRandom };

/// A generator together with per-index shift perturbations theta_i on the
/// integer window [-L, L]. The i-th basis function is phi(. - i - theta_i).
struct ShiftedFamily {
  Generator generator;
  IndexWindow window;
  Vector shifts;
  std::uint64_t seed = 0;

  Scalar shift(int i) const { return shifts(window.to_flat(i)); }
  /// Perturbed center i + theta_i.
  Scalar center(int i) const { return i + shift(i); }
  bool is_unshifted() const { return shifts.isZero(0.0); }
};

/// theta_i = 0 in Zero mode; i.i.d. uniform on [-bound, bound] otherwise.
/// Throws InvalidBound unless bound lies in (0, 1/2].
ShiftedFamily build_family(const Generator& generator, ShiftMode mode,
                           int window_halfwidth, std::uint64_t seed,
                           Scalar bound = 0.2);

enum class CoefficientLaw { RandomDecay, CosineDecay };

/// Finite coefficient sequence over [-L_sig, L_sig] attached to a family;
/// evaluates as f(t) = sum_i c_i phi(t - i - theta_i).
struct FriSignal {
  ShiftedFamily family;
  IndexWindow coeff_window;
  Vector coeffs;
  std::uint64_t seed = 0;

  Scalar coeff(int i) const { return coeffs(coeff_window.to_flat(i)); }
};

/// RandomDecay: c_i = u_i / (1+|i|) with u_i uniform on [-1, 1];
/// CosineDecay: c_i = cos(pi i / 8) / (1+|i|).
/// Throws WindowMismatch when L_sig exceeds the family window or L_sig < 1.
FriSignal make_test_signal(const ShiftedFamily& family, CoefficientLaw law,
                           int coeff_halfwidth, std::uint64_t seed);

/// Zero signal on the given window (convenience for tests and the CLI).
FriSignal zero_signal(const ShiftedFamily& family, int coeff_halfwidth);

Scalar eval_signal(const FriSignal& f, Scalar t);

/// Signal values on a batch of points (support-pruned like eval_signal).
Vector eval_signal(const FriSignal& f, const Vector& ts);

}  // namespace rkgal
