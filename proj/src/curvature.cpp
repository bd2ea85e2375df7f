#include "nullgeo/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "nullgeo/error.hpp"

namespace nullgeo {

namespace {

MinkVec project_normal(const MinkVec& v, const NormalBasis& nb) {
  MinkVec out = mink_inner(v, nb.n1) * nb.n1;
  if (nb.n2) out += mink_inner(v, *nb.n2) * *nb.n2;
  return out;
}

}  // namespace

SecondForm second_form(const PointJets& pj, const FirstForm& ff, double tol) {
  if (!ff.timelike()) throw DegenerateMetricError("second_form: surface is not timelike at the point");
  const NormalBasis nb = normal_complement(pj.px, pj.py, tol);
  return {project_normal(pj.pxx, nb), project_normal(pj.pxy, nb), project_normal(pj.pyy, nb)};
}

MinkVec ii_eval(const SecondForm& sf, const TangentVec& u, const TangentVec& v) {
  return (u.p * v.p) * sf.xx + (u.p * v.q + u.q * v.p) * sf.xy + (u.q * v.q) * sf.yy;
}

MinkVec mean_curvature_trace(const SecondForm& sf, const FirstForm& ff) {
  return (ff.G * sf.xx - 2.0 * ff.F * sf.xy + ff.E * sf.yy) / (2.0 * ff.det);
}

double gauss_curvature(const SecondForm& sf, const FirstForm& ff) {
  return (mink_inner(sf.xx, sf.yy) - mink_norm2(sf.xy)) / ff.det;
}

TangentVec shape_operator(const SecondForm& sf, const MinkVec& xi, const TangentVec& X, const PointJets& pj,
                          const FirstForm& ff) {
  const TangentVec ex = make_tangent(1.0, 0.0, pj);
  const TangentVec ey = make_tangent(0.0, 1.0, pj);
  const Solve2 s = gram_solve2(ff.E, ff.F, ff.G, mink_inner(ii_eval(sf, X, ex), xi), mink_inner(ii_eval(sf, X, ey), xi));
  return make_tangent(s.a, s.b, pj);
}

CurvatureData curvature_data(AdaptedFrame& frame, const PointJets& pj, const SecondForm& sf, const FirstForm& ff,
                             double tol) {
  CurvatureData cd;
  cd.H = -ii_eval(sf, frame.Zt, frame.W);
  cd.H_trace = mean_curvature_trace(sf, ff);
  cd.K = gauss_curvature(sf, ff);
  cd.IIWW = ii_eval(sf, frame.W, frame.W);
  cd.a = mink_inner(cd.IIWW, frame.Zperp);
  cd.IIZZ = ii_eval(sf, frame.Zt, frame.Zt);
  frame.nu.reset();
  frame.orientation_sign = 1;
  if (cd.IIZZ.euclid_norm() > tol * ff.scale) {
    cd.IIZZ_norm = std::sqrt(std::max(mink_norm2(cd.IIZZ), 0.0));
    if (cd.IIZZ_norm > 0.0) {
      frame.nu = cd.IIZZ / cd.IIZZ_norm;
      cd.KN = cd.a * cd.IIZZ_norm;
      cd.Hnu = mink_inner(cd.H, *frame.nu);
      if (pj.px.dim() == 4) {
        const double r = 1.0 / std::sqrt(2.0);
        const MinkVec e1 = r * (frame.Zt.ambient + frame.W.ambient);
        const MinkVec e2 = r * (frame.Zt.ambient - frame.W.ambient);
        frame.orientation_sign = det4(e1, e2, frame.Zperp, *frame.nu) < 0.0 ? -1 : 1;
      }
    }
  }
  return cd;
}

PointGeometry analyze_point(const SurfaceDef& def, ChartPoint pt, double tol) {
  PointGeometry g;
  g.pt = pt;
  g.pj = point_jets(def, pt);
  g.ff = first_form(g.pj);
  g.frame = build_adapted_frame(def.Z, g.pj, g.ff, tol);
  g.sf = second_form(g.pj, g.ff, tol);
  g.cd = curvature_data(g.frame, g.pj, g.sf, g.ff, tol);
  return g;
}

}  // namespace nullgeo
