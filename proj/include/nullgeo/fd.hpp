#pragma once

// Finite-difference oracle. Independent of the jet machinery: fields are
// sampled pointwise and differenced, so agreement with jet-derived closed
// forms is a genuine cross-check.

#include <array>
#include <functional>

#include "nullgeo/mink.hpp"
#include "nullgeo/surface.hpp"

namespace nullgeo {

struct FdOptions {
  double h = 1e-4;
  bool richardson = true;
};

using ScalarField = std::function<double(ChartPoint)>;
using VectorField = std::function<MinkVec(ChartPoint)>;
using GradientField = std::function<std::array<double, 2>(ChartPoint)>;

/// Central difference of f along the chart direction (p,q). With Richardson,
/// combines steps h and h/2 as (4 D_{h/2} - D_h) / 3.
template <typename T, typename Field>
T fd_central(const Field& f, ChartPoint pt, double p, double q, const FdOptions& o) {
  auto diff = [&](double h) {
    const T plus = f(ChartPoint{pt.x + h * p, pt.y + h * q});
    const T minus = f(ChartPoint{pt.x - h * p, pt.y - h * q});
    return (plus - minus) * (0.5 / h);
  };
  if (!o.richardson) return diff(o.h);
  const T coarse = diff(o.h);
  const T fine = diff(0.5 * o.h);
  return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

double fd_directional(const ScalarField& field, ChartPoint point, double p, double q, const FdOptions& o);
MinkVec ambient_fd_vectorfield(const VectorField& field, ChartPoint point, double p, double q, const FdOptions& o);

/// Chart-form Laplace-Beltrami (1/sqrt|g|) d_i(sqrt|g| g^ij d_j f) with the
/// metric taken from the immersion jets. Sign convention: div(grad f).
/// This overload differences f twice, so rounding grows like 1/h^2; steps
/// near 1e-3 suit it better than the single-difference default.
double laplace_beltrami(const SurfaceDef& def, const ScalarField& f, ChartPoint point, const FdOptions& o);

/// Overload for fields whose chart gradient is known exactly; only the outer
/// divergence is differenced.
double laplace_beltrami(const SurfaceDef& def, const GradientField& grad, ChartPoint point, const FdOptions& o);

/// Exact chart gradient (f_x, f_y) of an expression.
GradientField expr_gradient(const Expr& f);

}  // namespace nullgeo
