#include "nullgeo/checks.hpp"

#include <algorithm>
#include <cmath>

#include "nullgeo/error.hpp"

namespace nullgeo {

namespace {

struct Local {
  PointJets pj;
  FirstForm ff;
};

Local local(const SurfaceDef& def, ChartPoint p) {
  Local l{point_jets(def, p), {}};
  l.ff = first_form(l.pj);
  return l;
}

double norm(const MinkVec& v) { return v.euclid_norm(); }

}  // namespace

VectorField zt_field(const SurfaceDef& def) {
  return [&def](ChartPoint p) {
    const Local l = local(def, p);
    return tangent_project(def.Z, l.pj, l.ff).ambient;
  };
}

VectorField zperp_field(const SurfaceDef& def) {
  return [&def](ChartPoint p) {
    const Local l = local(def, p);
    return def.Z - tangent_project(def.Z, l.pj, l.ff).ambient;
  };
}

VectorField mean_curvature_field(const SurfaceDef& def) {
  return [&def](ChartPoint p) {
    const Local l = local(def, p);
    return mean_curvature_trace(second_form(l.pj, l.ff), l.ff);
  };
}

ScalarField a_field(const SurfaceDef& def, double tol) {
  return [&def, tol](ChartPoint p) { return analyze_point(def, p, tol).cd.a; };
}

ScalarField gauss_curvature_field(const SurfaceDef& def) {
  return [&def](ChartPoint p) {
    const Local l = local(def, p);
    return gauss_curvature(second_form(l.pj, l.ff), l.ff);
  };
}

Fragment frame_residuals(const PointGeometry& g, const Tolerances& t) {
  Fragment out;
  const AdaptedFrame& f = g.frame;
  const MinkVec& zt = f.Zt.ambient;
  const MinkVec& w = f.W.ambient;
  double fr = std::max({std::abs(mink_norm2(zt)), std::abs(mink_norm2(w)), std::abs(mink_inner(zt, w) + 1.0),
                        std::abs(mink_norm2(f.Zperp) - 1.0), std::abs(mink_inner(f.Zperp, g.pj.px)),
                        std::abs(mink_inner(f.Zperp, g.pj.py))});
  if (f.nu) fr = std::max({fr, std::abs(mink_norm2(*f.nu) - 1.0), std::abs(mink_inner(*f.nu, f.Zperp))});
  out.add("frame_invariants", "<Zt,Zt> = <W,W> = 0, <Zt,W> = -1, <Z⊥,Z⊥> = 1, Z⊥ ⟂ TM, nu unit ⟂ Z⊥", fr, t.frame);

  double tang = 0.0;
  for (const MinkVec* v : {&g.sf.xx, &g.sf.xy, &g.sf.yy})
    tang = std::max({tang, std::abs(mink_inner(*v, g.pj.px)), std::abs(mink_inner(*v, g.pj.py))});
  out.add("second_form_tangency", "<II_ab, psi_x> = <II_ab, psi_y> = 0", tang, t.frame);

  const CurvatureData& cd = g.cd;
  out.add("H_trace", "-II(Zt,W) = tr II / 2", norm(cd.H - cd.H_trace), t.frame);
  out.add("IIZZ_perp", "<II(Zt,Zt), Z⊥> = 0", std::abs(mink_inner(cd.IIZZ, f.Zperp)), t.frame);
  out.add("H_perp", "<H, Z⊥> = 0", std::abs(mink_inner(cd.H, f.Zperp)), t.frame);
  out.add("K_gauss_identity", "K = |H|^2 - <II(W,W), II(Zt,Zt)>",
          std::abs(cd.K - mink_norm2(cd.H) + mink_inner(cd.IIWW, cd.IIZZ)), t.first_fd);
  if (f.nu && g.pj.px.dim() == 4) {
    const MinkVec lhs = cd.IIZZ_norm * cd.IIWW;
    const MinkVec rhs = cd.KN * f.Zperp + (mink_norm2(cd.H) - cd.K) * *f.nu;
    out.add("IIWW_decomposition", "|II(Zt,Zt)| II(W,W) = KN Z⊥ + (|H|^2 - K) nu", norm(lhs - rhs), t.first_fd);
  }

  out.observe("a", cd.a);
  out.observe("K", cd.K);
  out.observe("H_norm", norm(cd.H));
  out.observe("Hnorm2", mink_norm2(cd.H));
  out.observe("IIZZ_norm", norm(cd.IIZZ));
  out.observe("a_IIZZ", std::abs(cd.a) * norm(cd.IIZZ));
  out.observe("KN", cd.KN);
  out.observe("ruled_gap", std::abs(mink_norm2(cd.H) - cd.K));
  return out;
}

Fragment compatibility_residuals(const SurfaceDef& def, ChartPoint pt, const Tolerances& t, const FdOptions& fd) {
  Fragment out;
  const PointGeometry g = analyze_point(def, pt, t.frame);
  const VectorField zt = zt_field(def);
  const VectorField zp = zperp_field(def);
  const TangentVec dirs[2] = {make_tangent(1.0, 0.0, g.pj), make_tangent(0.0, 1.0, g.pj)};

  double r1 = 0.0, r2 = 0.0;
  for (const TangentVec& X : dirs) {
    const MinkVec dzt = ambient_fd_vectorfield(zt, pt, X.p, X.q, fd);
    const TangentVec A = shape_operator(g.sf, g.frame.Zperp, X, g.pj, g.ff);
    r1 = std::max(r1, norm(tangent_part(dzt, g.pj, g.ff).ambient - A.ambient));
    const MinkVec dzp = ambient_fd_vectorfield(zp, pt, X.p, X.q, fd);
    r2 = std::max(r2, norm(normal_part(dzp, g.pj, g.ff) + ii_eval(g.sf, g.frame.Zt, X)));
  }
  out.add("r1_levi_civita_Zt", "∇_X Zt = A_{Z⊥}(X), X = psi_x, psi_y", r1, t.first_fd);
  out.add("r2_normal_Zperp", "∇⊥_X Z⊥ = -II(Zt, X), X = psi_x, psi_y", r2, t.first_fd);

  const TangentVec& Zt = g.frame.Zt;
  const MinkVec dzz = ambient_fd_vectorfield(zt, pt, Zt.p, Zt.q, fd);
  out.add("r3_Zt_geodesic", "∇_{Zt} Zt = 0", norm(tangent_part(dzz, g.pj, g.ff).ambient), t.first_fd);
  out.add("r4_shape_Zt", "A_{Z⊥}(Zt) = 0", norm(shape_operator(g.sf, g.frame.Zperp, Zt, g.pj, g.ff).ambient),
          t.first_fd);

  auto theta = [&](int k) {
    return [&def, k, &zt](ChartPoint p) {
      const PointJets pj = point_jets(def, p);
      return mink_inner(k == 0 ? pj.px : pj.py, zt(p));
    };
  };
  const double dtheta = fd_directional(theta(1), pt, 1.0, 0.0, fd) - fd_directional(theta(0), pt, 0.0, 1.0, fd);
  out.add("r5_theta_closed", "d<dpsi, Zt> = 0", std::abs(dtheta), t.first_fd);

  const TangentVec& W = g.frame.W;
  const MinkVec dH = ambient_fd_vectorfield(mean_curvature_field(def), pt, W.p, W.q, fd);
  const double formu0 = mink_norm2(g.cd.H) + mink_inner(normal_part(dH, g.pj, g.ff), g.frame.Zperp);
  out.add("r6_H_normal_derivative", "|H|^2 = -<∇⊥_W H, Z⊥>", std::abs(formu0), t.first_fd);

  const MinkVec dzp_z = ambient_fd_vectorfield(zp, pt, Zt.p, Zt.q, fd);
  const MinkVec dzp_w = ambient_fd_vectorfield(zp, pt, W.p, W.q, fd);
  out.observe("nabla_perp_Zperp",
              std::max(norm(normal_part(dzp_z, g.pj, g.ff)), norm(normal_part(dzp_w, g.pj, g.ff))));
  return out;
}

Fragment identity_residuals(const SurfaceDef& def, ChartPoint pt, const Tolerances& t, const FdOptions& fd) {
  Fragment out;
  const PointGeometry g = analyze_point(def, pt, t.frame);
  const ScalarField a = a_field(def, t.frame);
  const ScalarField K = gauss_curvature_field(def);
  const TangentVec& Zt = g.frame.Zt;
  const TangentVec& W = g.frame.W;
  const double k = g.cd.K;

  const double zta = fd_directional(a, pt, Zt.p, Zt.q, fd);
  out.add("K_equals_Zt_a", "K = Zt(a)", std::abs(k - zta), t.second_fd);
  out.observe("Zt_a", zta);

  // a is differenced twice; a wider step keeps rounding below the truncation error.
  FdOptions outer = fd;
  outer.h = t.outer_h;
  const double lap_a = laplace_beltrami(def, a, pt, outer);
  const double wk = fd_directional(K, pt, W.p, W.q, fd);
  out.add("laplacian_a", "Δa = -2Ka - 2W(K)", std::abs(lap_a + 2.0 * k * g.cd.a + 2.0 * wk), t.second_fd);

  if (std::abs(k) <= t.first_fd) {
    const double ax = fd_directional(a, pt, 1.0, 0.0, fd);
    const double ay = fd_directional(a, pt, 0.0, 1.0, fd);
    const Solve2 grad = gram_solve2(g.ff.E, g.ff.F, g.ff.G, ax, ay);
    out.observe("grad_a_cross_Zt", std::abs(grad.a * Zt.q - grad.b * Zt.p));
    // grad a = a1 Zt and <Zt,W> = -1 give a1 = -W(a).
    ScalarField a1 = [&def, &a, &fd, &t](ChartPoint p) {
      const AdaptedFrame fr = build_adapted_frame(def, p, t.frame);
      return -fd_directional(a, p, fr.W.p, fr.W.q, fd);
    };
    out.observe("a1_laplacian", std::abs(laplace_beltrami(def, a1, pt, outer)));
  }
  return out;
}

double normal_curvature_ricci(const SurfaceDef& def, ChartPoint pt, const FdOptions& fd, double tol) {
  const PointGeometry g = analyze_point(def, pt, tol);
  if (!g.frame.nu || def.dim != 4) throw UnsupportedPointError("normal_curvature_ricci: nu is absent");
  const VectorField zp = zperp_field(def);
  auto nu_at = [&def, tol](ChartPoint p) {
    const PointGeometry q = analyze_point(def, p, tol);
    if (!q.frame.nu) throw UnsupportedPointError("normal_curvature_ricci: nu is absent on the stencil");
    return *q.frame.nu;
  };
  auto omega = [&](double dp, double dq) {
    return [&, dp, dq](ChartPoint p) { return mink_inner(ambient_fd_vectorfield(zp, p, dp, dq, fd), nu_at(p)); };
  };
  const double curl = fd_directional(omega(0.0, 1.0), pt, 1.0, 0.0, fd) -
                      fd_directional(omega(1.0, 0.0), pt, 0.0, 1.0, fd);
  const TangentVec& Zt = g.frame.Zt;
  const TangentVec& W = g.frame.W;
  return -(Zt.p * W.q - Zt.q * W.p) * curl;
}

double jet_vs_fd(const SurfaceDef& def, ChartPoint pt, const FdOptions& fd) {
  const PointJets pj = point_jets(def, pt);
  auto pos = [&def](ChartPoint p) { return eval_position(def, p); };
  auto dpos = [&](double dp, double dq) {
    return [&, dp, dq](ChartPoint p) { return ambient_fd_vectorfield(pos, p, dp, dq, fd); };
  };
  const MinkVec fx = ambient_fd_vectorfield(pos, pt, 1.0, 0.0, fd);
  const MinkVec fy = ambient_fd_vectorfield(pos, pt, 0.0, 1.0, fd);
  const MinkVec fxx = ambient_fd_vectorfield(dpos(1.0, 0.0), pt, 1.0, 0.0, fd);
  const MinkVec fxy = ambient_fd_vectorfield(dpos(1.0, 0.0), pt, 0.0, 1.0, fd);
  const MinkVec fyy = ambient_fd_vectorfield(dpos(0.0, 1.0), pt, 0.0, 1.0, fd);
  double worst = 0.0;
  auto cmp = [&worst](const MinkVec& jet, const MinkVec& est) {
    worst = std::max(worst, (jet - est).max_abs() / std::max(jet.max_abs(), 1.0));
  };
  cmp(pj.px, fx);
  cmp(pj.py, fy);
  cmp(pj.pxx, fxx);
  cmp(pj.pxy, fxy);
  cmp(pj.pyy, fyy);
  return worst;
}

MinkVec surface_gradient(const SurfaceDef& m0, const Expr& f, ChartPoint pt) {
  const Local l = local(m0, pt);
  const Jet2 j = eval_jet(f, pt.x, pt.y);
  const Solve2 s = gram_solve2(l.ff.E, l.ff.F, l.ff.G, j.dx, j.dy);
  return make_tangent(s.a, s.b, l.pj).ambient;
}

GeodesicResult geodesic_residual(const SurfaceDef& m0, const Expr& f, ChartPoint pt, const FdOptions& fd,
                                 double tol) {
  GeodesicResult r;
  const Local l = local(m0, pt);
  const Jet2 j = eval_jet(f, pt.x, pt.y);
  const Solve2 s = gram_solve2(l.ff.E, l.ff.F, l.ff.G, j.dx, j.dy);
  const MinkVec grad = make_tangent(s.a, s.b, l.pj).ambient;
  r.grad_norm2 = mink_norm2(grad);
  const double e = grad.euclid_norm();
  if (e <= tol * l.ff.scale) {
    r.status = GeodesicResult::Status::degenerate;
    return r;
  }
  if (std::abs(r.grad_norm2) > tol * e * e) {
    r.status = GeodesicResult::Status::not_lightlike;
    return r;
  }
  auto field = [&m0, &f](ChartPoint p) { return surface_gradient(m0, f, p); };
  const MinkVec d = ambient_fd_vectorfield(field, pt, s.a, s.b, fd);
  r.value = tangent_part(d, l.pj, l.ff).ambient.euclid_norm();
  return r;
}

}  // namespace nullgeo
