#pragma once

#include "rkgal/generator.hpp"
#include "rkgal/quadrature.hpp"

namespace rkgal {

/// Inner product of two shifted generators,
///   correlation(g, gt, a, b) = int g(t - a) gt(t - b) dt.
/// Dispatches to a closed form when one is available (sinc-sinc, gauss-gauss,
/// sinc-indicator via the sine integral, spline-indicator via the piecewise
/// polynomial antiderivative, spline-spline via the degree-7 B-spline);
/// everything else goes through the adaptive integrator restricted to the
/// factors' common active region.
Scalar correlation(const Generator& g, const Generator& gt, Scalar a, Scalar b,
                   const QuadratureSpec& spec = {});

/// Pure quadrature route, bypassing the closed-form dispatch. Used as the
/// independent cross-check for the closed forms.
Scalar correlation_quadrature(const Generator& g, const Generator& gt,
                              Scalar a, Scalar b,
                              const QuadratureSpec& spec = {});

/// True when `correlation` would take a closed form for this pair.
bool correlation_has_closed_form(GeneratorKind g, GeneratorKind gt);

}  // namespace rkgal
