#pragma once

#include <optional>
#include <string>

#include "rkgal/types.hpp"

namespace rkgal {

enum class GeneratorKind { Sinc, Gauss, CubicBSpline, Indicator };

/// One of the four built-in generating functions together with the metadata
/// the integration engine needs: an exact support for compactly supported
/// generators, and a truncation half-width beyond which |phi| contributions
/// are neglected in integrals and synthesis sums.
struct Generator {
  GeneratorKind kind = GeneratorKind::Sinc;
  std::optional<Interval> support;
  Scalar decay_halfwidth = 500.0;

  static Generator sinc() { return {GeneratorKind::Sinc, std::nullopt, 500.0}; }
  static Generator gauss() {
    // exp(-3 t^2 / 2) < 1e-32 beyond |t| = 7
    return {GeneratorKind::Gauss, std::nullopt, 7.0};
  }
  static Generator cubic_bspline() {
    return {GeneratorKind::CubicBSpline, Interval{-2.0, 2.0}, 2.0};
  }
  static Generator indicator() {
    return {GeneratorKind::Indicator, Interval{-0.5, 0.5}, 0.5};
  }
  static Generator make(GeneratorKind kind);
};

/// Point evaluation of the generating function. Total: defined for every
/// finite t, removable singularities handled (sinc(0) = 1).
Scalar eval_generator(const Generator& g, Scalar t);

/// Centered cardinal B-spline of the given degree, evaluated by the Cox-de
/// Boor recursion on the integer-offset knots -(degree+1)/2, ..., (degree+1)/2.
/// Degree 3 is the CubicBSpline generator; degree 7 is its autocorrelation.
Scalar cardinal_bspline(int degree, Scalar x);

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
Scalar sine_integral(Scalar x);

std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

}  // namespace rkgal
