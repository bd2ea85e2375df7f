#include "nullgeo/fd.hpp"

#include <cmath>

#include "nullgeo/error.hpp"
#include "nullgeo/frame.hpp"

namespace nullgeo {

double fd_directional(const ScalarField& field, ChartPoint point, double p, double q, const FdOptions& o) {
  return fd_central<double>(field, point, p, q, o);
}

MinkVec ambient_fd_vectorfield(const VectorField& field, ChartPoint point, double p, double q, const FdOptions& o) {
  return fd_central<MinkVec>(field, point, p, q, o);
}

namespace {

// sqrt|g| g^{ij} grad_j at a point, i = x, y.
std::array<double, 2> density_flux(const SurfaceDef& def, ChartPoint pt, const std::array<double, 2>& grad) {
  const FirstForm ff = first_form(point_jets(def, pt));
  if (ff.det == 0.0) throw DegenerateMetricError("laplace_beltrami: singular metric");
  const double root = std::sqrt(std::abs(ff.det));
  // inverse metric = [[G, -F], [-F, E]] / det
  const double ux = (ff.G * grad[0] - ff.F * grad[1]) / ff.det;
  const double uy = (-ff.F * grad[0] + ff.E * grad[1]) / ff.det;
  return {root * ux, root * uy};
}

double divergence(const SurfaceDef& def, const GradientField& grad, ChartPoint point, const FdOptions& o) {
  auto flux_x = [&](ChartPoint p) { return density_flux(def, p, grad(p))[0]; };
  auto flux_y = [&](ChartPoint p) { return density_flux(def, p, grad(p))[1]; };
  const double div = fd_central<double>(flux_x, point, 1.0, 0.0, o) + fd_central<double>(flux_y, point, 0.0, 1.0, o);
  const FirstForm ff = first_form(point_jets(def, point));
  return div / std::sqrt(std::abs(ff.det));
}

}  // namespace

double laplace_beltrami(const SurfaceDef& def, const ScalarField& f, ChartPoint point, const FdOptions& o) {
  GradientField grad = [&](ChartPoint p) -> std::array<double, 2> {
    return {fd_central<double>(f, p, 1.0, 0.0, o), fd_central<double>(f, p, 0.0, 1.0, o)};
  };
  return divergence(def, grad, point, o);
}

double laplace_beltrami(const SurfaceDef& def, const GradientField& grad, ChartPoint point, const FdOptions& o) {
  return divergence(def, grad, point, o);
}

GradientField expr_gradient(const Expr& f) {
  return [f](ChartPoint p) -> std::array<double, 2> {
    const Jet2 j = eval_jet(f, p.x, p.y);
    return {j.dx, j.dy};
  };
}

}  // namespace nullgeo
