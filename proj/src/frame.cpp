#include "nullgeo/frame.hpp"

#include <algorithm>
#include <cmath>

#include "nullgeo/error.hpp"

namespace nullgeo {

bool FirstForm::timelike(double eps_det) const { return det < -eps_det * std::pow(scale, 4); }

FirstForm first_form(const PointJets& pj) {
  FirstForm ff;
  ff.E = mink_inner(pj.px, pj.px);
  ff.F = mink_inner(pj.px, pj.py);
  ff.G = mink_inner(pj.py, pj.py);
  ff.det = ff.E * ff.G - ff.F * ff.F;
  ff.scale = std::max(pj.px.euclid_norm(), pj.py.euclid_norm());
  return ff;
}

TangentVec make_tangent(double p, double q, const PointJets& pj) { return {p, q, p * pj.px + q * pj.py}; }

TangentVec tangent_part(const MinkVec& v, const PointJets& pj, const FirstForm& ff) {
  const Solve2 s = gram_solve2(ff.E, ff.F, ff.G, mink_inner(v, pj.px), mink_inner(v, pj.py));
  return make_tangent(s.a, s.b, pj);
}

MinkVec normal_part(const MinkVec& v, const PointJets& pj, const FirstForm& ff) {
  return v - tangent_part(v, pj, ff).ambient;
}

TangentVec tangent_project(const MinkVec& Z, const PointJets& pj, const FirstForm& ff) {
  return tangent_part(Z, pj, ff);
}

NullDirection detect_null_direction(const MinkVec& Z, const PointJets& pj, const FirstForm& ff, double tol) {
  if (!ff.timelike()) throw DegenerateMetricError("surface is not timelike at the point");
  NullDirection nd;
  nd.Zt = tangent_project(Z, pj, ff);
  const double e = nd.Zt.ambient.euclid_norm();
  nd.has_cnd = e > tol * ff.scale && std::abs(mink_norm2(nd.Zt.ambient)) <= tol * e * e;
  return nd;
}

NullDirection detect_null_direction(const SurfaceDef& def, ChartPoint point, double tol) {
  const PointJets pj = point_jets(def, point);
  return detect_null_direction(def.Z, pj, first_form(pj), tol);
}

AdaptedFrame build_adapted_frame(const MinkVec& Z, const PointJets& pj, const FirstForm& ff, double tol) {
  const NullDirection nd = detect_null_direction(Z, pj, ff, tol);
  if (!nd.has_cnd) throw FrameError("no canonical null direction at the point");
  const TangentVec& Zt = nd.Zt;

  const double s2 = ff.scale * ff.scale;
  const double zx = mink_inner(Zt.ambient, pj.px);
  const double zy = mink_inner(Zt.ambient, pj.py);
  AdaptedFrame fr;
  double vp = 1.0, vq = 0.0, gzv = zx;
  fr.seed = WSeed::psi_x;
  if (std::abs(zx) < tol * s2) {
    vp = 0.0;
    vq = 1.0;
    gzv = zy;
    fr.seed = WSeed::psi_y;
    if (std::abs(zy) < tol * s2) throw FrameError("both W seeds are degenerate (Zt ~ 0)");
  }
  const TangentVec V = make_tangent(vp, vq, pj);
  const double c = mink_norm2(V.ambient) / (2.0 * gzv);
  // <Zt, W0> = <Zt, V> because Zt is null.
  const double w0p = vp - c * Zt.p;
  const double w0q = vq - c * Zt.q;
  fr.Zt = Zt;
  fr.W = make_tangent(-w0p / gzv, -w0q / gzv, pj);
  fr.Zperp = Z - Zt.ambient;
  return fr;
}

AdaptedFrame build_adapted_frame(const SurfaceDef& def, ChartPoint point, double tol) {
  const PointJets pj = point_jets(def, point);
  return build_adapted_frame(def.Z, pj, first_form(pj), tol);
}

}  // namespace nullgeo
