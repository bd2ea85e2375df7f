#include "nullgeo/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "nullgeo/error.hpp"

namespace nullgeo {

namespace {

constexpr double kNonzero = 1e-3;

struct CurveJet {
  MinkVec d1, d2;
};

// First and second derivative of a curve given in one chart variable.
CurveJet curve_jet(const CurveExprs& c, ChartPoint p, Var v) {
  const int n = static_cast<int>(c.size());
  CurveJet out{MinkVec(n), MinkVec(n)};
  for (int k = 0; k < n; ++k) {
    const Jet2 j = eval_jet(c[static_cast<std::size_t>(k)], p.x, p.y);
    out.d1[k] = v == Var::x ? j.dx : j.dy;
    out.d2[k] = v == Var::x ? j.dxx : j.dyy;
  }
  return out;
}

// Sine of the Euclidean angle between u and v.
double independence(const MinkVec& u, const MinkVec& v) {
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (int k = 0; k < u.dim(); ++k) {
    uu += u[k] * u[k];
    vv += v[k] * v[k];
    uv += u[k] * v[k];
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  return std::sqrt(std::max(uu * vv - uv * uv, 0.0) / (uu * vv));
}

Expr const_expr(double v) {
  return v < 0.0 ? Expr::unary(JetFn::neg, Expr::constant(-v)) : Expr::constant(v);
}

Expr var_y() { return Expr::variable(Var::y); }

bool is_zero_const(const Expr& e) { return e.node().kind == NodeKind::constant && e.node().value == 0.0; }

// a + y * b, dropping the term when b is the literal zero.
Expr plus_y_times(const Expr& a, const Expr& b) { return is_zero_const(b) ? a : a + var_y() * b; }

void require_dim(const CurveExprs& c, std::size_t n, const char* what) {
  if (c.size() != n) throw UsageError(std::string(what) + ": expected " + std::to_string(n) + " coordinates");
}

// Runs body, turning geometric failures at the point into notes.
template <typename Body>
void guarded(Fragment& out, const char* what, Body&& body) {
  try {
    body();
  } catch (const DegenerateMetricError&) {
    out.note(std::string(what) + " skipped: surface not timelike");
  } catch (const FrameError&) {
    out.note(std::string(what) + " skipped: no canonical null direction");
  } catch (const RangeError&) {
    out.note(std::string(what) + " skipped: stencil leaves the domain");
  }
}

const std::string kLightlike = "<c', c'> = 0";

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::ruled_4d: return "ruled_4d";
    case Family::ruled_3d: return "ruled_3d";
    case Family::sum_of_curves: return "sum_of_curves";
    case Family::graph_fg: return "graph_fg";
    case Family::graph_over_lorentz: return "graph_over_lorentz";
    case Family::minimal_flat_normal: return "minimal_flat_normal";
    case Family::user: return "user";
  }
  return "?";
}

CurveExprs parse_curve(const std::vector<std::string>& texts) {
  CurveExprs out;
  for (const auto& t : texts) out.push_back(parse_expr(t));
  return out;
}

CatalogEntry make_ruled_4d(std::string id, CurveExprs alpha, CurveExprs zt, MinkVec Z, Rect domain) {
  require_dim(alpha, 4, "make_ruled_4d alpha");
  require_dim(zt, 4, "make_ruled_4d zt");
  std::vector<Expr> coords;
  for (std::size_t k = 0; k < 4; ++k) coords.push_back(plus_y_times(alpha[k], zt[k]));
  CatalogEntry e;
  e.id = id;
  e.family = Family::ruled_4d;
  e.def = make_surface(std::move(id), std::move(coords), domain, Z);
  e.expected.ruled = true;
  const MinkVec Zn = e.def.Z;
  e.validator = [alpha, zt, Zn](ChartPoint p, const Tolerances& t, const FdOptions&) {
    Fragment out;
    const MinkVec da = curve_jet(alpha, p, Var::x).d1;
    MinkVec z(4);
    for (int k = 0; k < 4; ++k) z[k] = eval_value(zt[static_cast<std::size_t>(k)], p.x, p.y);
    out.add("hyp_alpha_lightlike", "<alpha', alpha'> = 0", std::abs(mink_norm2(da)), t.frame);
    out.add("hyp_zt_lightlike", "<Zt(x), Zt(x)> = 0", std::abs(mink_norm2(z)), t.frame);
    out.add("hyp_zt_perp_Z", "<Z, Zt(x)> = 0", std::abs(mink_inner(Zn, z)), t.frame);
    out.add("hyp_Z_not_perp_alpha", "<Z, alpha'> != 0", std::abs(mink_inner(Zn, da)), kNonzero, Bound::at_least);
    out.add("hyp_independent", "alpha', Zt(x) independent", independence(da, z), kNonzero, Bound::at_least);
    return out;
  };
  return e;
}

CatalogEntry make_ruled_3d(std::string id, CurveExprs alpha, MinkVec T0, MinkVec Z, Rect domain) {
  require_dim(alpha, 3, "make_ruled_3d alpha");
  if (T0.dim() != 3) throw UsageError("make_ruled_3d: T0 must have dim 3");
  std::vector<Expr> coords;
  for (int k = 0; k < 3; ++k) coords.push_back(plus_y_times(alpha[static_cast<std::size_t>(k)], const_expr(T0[k])));
  CatalogEntry e;
  e.id = id;
  e.family = Family::ruled_3d;
  e.def = make_surface(std::move(id), std::move(coords), domain, Z);
  e.expected.ruled = true;
  e.expected.minimal = true;
  e.expected.flat = true;
  const MinkVec Zn = e.def.Z;
  e.validator = [alpha, T0, Zn](ChartPoint p, const Tolerances& t, const FdOptions&) {
    Fragment out;
    const MinkVec da = curve_jet(alpha, p, Var::x).d1;
    out.add("hyp_alpha_lightlike", "<alpha', alpha'> = 0", std::abs(mink_norm2(da)), t.frame);
    out.add("hyp_T0_lightlike", "<T0, T0> = 0", std::abs(mink_norm2(T0)), t.frame);
    out.add("hyp_T0_perp_Z", "<Z, T0> = 0", std::abs(mink_inner(Zn, T0)), t.frame);
    out.add("hyp_Z_not_perp_alpha", "<Z, alpha'> != 0", std::abs(mink_inner(Zn, da)), kNonzero, Bound::at_least);
    out.add("hyp_independent", "alpha', T0 independent", independence(da, T0), kNonzero, Bound::at_least);
    return out;
  };
  return e;
}

CatalogEntry make_sum_of_curves(std::string id, CurveExprs alpha, CurveExprs beta, Rect domain) {
  require_dim(alpha, 4, "make_sum_of_curves alpha");
  require_dim(beta, 4, "make_sum_of_curves beta");
  std::vector<Expr> coords;
  for (std::size_t k = 0; k < 4; ++k) coords.push_back(alpha[k] + beta[k]);
  CatalogEntry e;
  e.id = id;
  e.family = Family::sum_of_curves;
  const MinkVec e3 = MinkVec::basis(4, 2);
  e.def = make_surface(std::move(id), std::move(coords), domain, e3);
  e.expected.minimal = true;
  e.expected.iizz_nonzero = true;
  const SurfaceDef def = e.def;
  e.validator = [alpha, beta, e3, def](ChartPoint p, const Tolerances& t, const FdOptions&) {
    Fragment out;
    const CurveJet a = curve_jet(alpha, p, Var::x);
    const CurveJet b = curve_jet(beta, p, Var::y);
    out.add("hyp_alpha_lightlike", kLightlike + " for alpha", std::abs(mink_norm2(a.d1)), t.frame);
    out.add("hyp_beta_lightlike", kLightlike + " for beta", std::abs(mink_norm2(b.d1)), t.frame);
    out.add("hyp_alpha_in_e4_perp", "alpha_4 constant", std::abs(a.d1[3]), t.frame);
    out.add("hyp_beta_in_e3_perp", "beta_3 constant", std::abs(b.d1[2]), t.frame);
    const double ab = mink_inner(a.d1, b.d1);
    out.add("hyp_alpha_beta_nonorthogonal", "<alpha', beta'> != 0", std::abs(ab), kNonzero, Bound::at_least);
    out.add("hyp_e3_alpha", "<e3, alpha'> != 0", std::abs(mink_inner(e3, a.d1)), kNonzero, Bound::at_least);
    out.add("hyp_beta_second_not_lightlike", "<beta'', beta''> != 0", std::abs(mink_norm2(b.d2)), kNonzero,
            Bound::at_least);
    guarded(out, "e3 tangent formula", [&] {
      const NullDirection nd = detect_null_direction(def, p, t.frame);
      if (!nd.has_cnd) throw FrameError("no cnd");
      const double lambda = mink_inner(e3, a.d1) / ab;
      out.add("e3_tangent_formula", "e3^T = lambda beta', lambda = <e3,alpha'>/<alpha',beta'>",
              (nd.Zt.ambient - lambda * b.d1).euclid_norm(), t.frame);
    });
    return out;
  };
  return e;
}

CatalogEntry make_graph_fg(std::string id, Expr f, Expr g, Rect domain, GraphWhich which) {
  CatalogEntry e;
  e.id = id;
  e.family = Family::graph_fg;
  const MinkVec e3 = MinkVec::basis(4, 2);
  const MinkVec e4 = MinkVec::basis(4, 3);
  std::vector<Expr> coords{f, g, Expr::variable(Var::x), Expr::variable(Var::y)};
  e.def = make_surface(std::move(id), std::move(coords), domain, which == GraphWhich::e3 ? e3 : e4);
  e.expected.minimality_iff = which == GraphWhich::both;
  const SurfaceDef def = e.def;
  e.validator = [f, g, which, def, e3, e4](ChartPoint p, const Tolerances& t, const FdOptions&) {
    Fragment out;
    const PointJets pj = point_jets(def, p);
    const FirstForm ff = first_form(pj);
    const Jet2 jf = eval_jet(f, p.x, p.y);
    const Jet2 jg = eval_jet(g, p.x, p.y);
    const double gf2 = jf.dx * jf.dx + jf.dy * jf.dy;
    const double gg2 = jg.dx * jg.dx + jg.dy * jg.dy;
    const double cross = jf.dx * jg.dy - jf.dy * jg.dx;
    const double det_graph = 1.0 - gf2 + gg2 - cross * cross;
    out.add("hyp_timelike", "EG - F^2 < 0", ff.det, -t.frame);
    out.add("det_graph_formula", "EG - F^2 = 1 - |∇f|^2 + |∇g|^2 - (f_x g_y - f_y g_x)^2", std::abs(det_graph - ff.det),
            t.frame * std::max(1.0, std::abs(ff.det)));
    const bool want_e4 = which != GraphWhich::e3;
    const bool want_e3 = which != GraphWhich::e4;
    if (want_e4) out.add("hyp_E_zero", "E = 0", std::abs(ff.E), t.frame);
    if (want_e3) out.add("hyp_G_zero", "G = 0", std::abs(ff.G), t.frame);
    guarded(out, "graph null directions", [&] {
      for (int k = 0; k < 2; ++k) {
        if (k == 0 && !want_e4) continue;
        if (k == 1 && !want_e3) continue;
        const MinkVec& Z = k == 0 ? e4 : e3;
        const double metric = k == 0 ? ff.E : ff.G;
        const NullDirection nd = detect_null_direction(Z, pj, ff, t.frame);
        const bool vanishes = std::abs(metric) <= t.frame;
        const char* name = k == 0 ? "cnd_e4_iff_E_zero" : "cnd_e3_iff_G_zero";
        out.add(name, k == 0 ? "e4 null direction iff E = 0" : "e3 null direction iff G = 0",
                nd.has_cnd == vanishes ? 0.0 : 1.0, 0.0);
        if (nd.has_cnd) {
          const MinkVec expect = (1.0 / ff.F) * (k == 0 ? pj.px : pj.py);
          out.add(k == 0 ? "e4_tangent_formula" : "e3_tangent_formula",
                  k == 0 ? "e4^T = psi_x / F" : "e3^T = psi_y / F", (nd.Zt.ambient - expect).euclid_norm(),
                  t.frame);
        }
      }
      out.observe("H_trace_norm", mean_curvature_trace(second_form(pj, ff, t.frame), ff).euclid_norm());
    });
    out.observe("fxy_gxy", std::max(std::abs(jf.dxy), std::abs(jg.dxy)));
    return out;
  };
  return e;
}

CatalogEntry make_graph_over_lorentz(std::string id, CurveExprs chart, Expr f, Rect domain) {
  require_dim(chart, 3, "make_graph_over_lorentz chart");
  std::vector<Expr> coords = chart;
  coords.push_back(f);
  CatalogEntry e;
  e.id = id;
  e.family = Family::graph_over_lorentz;
  e.def = make_surface(id, std::move(coords), domain, MinkVec::basis(4, 3));
  const SurfaceDef m0 = make_surface(id + "_M0", chart, domain, MinkVec::basis(3, 1));
  e.validator = [m0, f](ChartPoint p, const Tolerances& t, const FdOptions& fd) {
    Fragment out;
    const PointJets pj = point_jets(m0, p);
    const FirstForm ff = first_form(pj);
    out.add("hyp_M0_lorentzian", "det g_M0 < 0", ff.det, -t.frame);
    guarded(out, "graph over M0", [&] {
      const MinkVec grad = surface_gradient(m0, f, p);
      out.add("grad_f_null", "<∇f, ∇f>_M0 = 0", std::abs(mink_norm2(grad)), t.frame);
      out.add("laplacian_f", "Δ_M0 f = 0", std::abs(laplace_beltrami(m0, expr_gradient(f), p, fd)), t.harmonic);
      const GeodesicResult gr = geodesic_residual(m0, f, p, fd, t.frame);
      if (gr.status == GeodesicResult::Status::ok)
        out.add("geodesic_grad_f", "D_{∇f} ∇f tangent part = 0", gr.value, t.first_fd);
      else
        out.note(gr.status == GeodesicResult::Status::degenerate ? "geodesic check: grad f vanishes"
                                                                   : "geodesic check: grad f not lightlike");
    });
    return out;
  };
  return e;
}

CatalogEntry make_minimal_flat_normal(std::string id, CurveExprs alpha, MinkVec W0, MinkVec Z, Rect domain) {
  require_dim(alpha, 4, "make_minimal_flat_normal alpha");
  if (W0.dim() != 4) throw UsageError("make_minimal_flat_normal: W0 must have dim 4");
  std::vector<Expr> coords;
  for (int k = 0; k < 4; ++k) coords.push_back(plus_y_times(alpha[static_cast<std::size_t>(k)], const_expr(W0[k])));
  CatalogEntry e;
  e.id = id;
  e.family = Family::minimal_flat_normal;
  e.def = make_surface(std::move(id), std::move(coords), domain, Z);
  e.expected.minimal = true;
  e.expected.flat = true;
  e.expected.flat_normal = true;
  e.expected.iizz_nonzero = true;
  const SurfaceDef def = e.def;
  e.validator = [alpha, W0, def](ChartPoint p, const Tolerances& t, const FdOptions&) {
    Fragment out;
    const CurveJet a = curve_jet(alpha, p, Var::x);
    out.add("hyp_alpha_lightlike", "<alpha', alpha'> = 0", std::abs(mink_norm2(a.d1)), t.frame);
    out.add("hyp_W0_lightlike", "<W0, W0> = 0", std::abs(mink_norm2(W0)), t.frame);
    out.add("hyp_independent", "alpha', W0 independent", independence(a.d1, W0), kNonzero, Bound::at_least);
    out.add("hyp_Z_perp_alpha", "<Z, alpha'> = 0", std::abs(mink_inner(def.Z, a.d1)), t.frame);
    out.add("hyp_Z_W0", "<Z, W0> != 0", std::abs(mink_inner(def.Z, W0)), kNonzero, Bound::at_least);
    guarded(out, "alpha pregeodesic", [&] {
      const PointJets pj = point_jets(def, p);
      const FirstForm ff = first_form(pj);
      if (!ff.timelike()) throw DegenerateMetricError("not timelike");
      // psi_x = alpha', psi_y = W0: the W0 component of Tan(alpha'') must vanish.
      const TangentVec tan = tangent_part(a.d2, pj, ff);
      out.add("alpha_pregeodesic", "Tan(alpha'') parallel to alpha'", std::abs(tan.q), t.frame);
    });
    return out;
  };
  return e;
}

CatalogEntry make_user_entry(SurfaceDef def) {
  CatalogEntry e;
  e.id = def.label;
  e.family = Family::user;
  e.def = std::move(def);
  return e;
}

namespace {

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  const MinkVec e4 = MinkVec::basis(4, 3);

  c.push_back(make_ruled_4d("ruled_4d", parse_curve({"x", "0", "0", "x"}), parse_curve({"1", "cos(x)", "sin(x)", "0"}),
                            e4, Rect{-1.0, 1.0, 0.5, 1.5}));

  // Z is orthogonal to alpha' at x = pi/2 and alpha' is parallel to T0 at x = 0.
  c.push_back(make_ruled_3d("ruled_3d", parse_curve({"x", "sin(x)", "1-cos(x)"}), MinkVec{1, 1, 0}, MinkVec{1, 1, 1},
                            Rect{0.3, 1.3, -1.0, 1.0}));

  {
    CatalogEntry e = make_sum_of_curves("sum_of_curves", parse_curve({"sinh(x)", "cosh(x)", "x", "0"}),
                                        parse_curve({"sinh(y)", "y", "0", "cosh(y)"}), Rect{-0.8, 0.8, -0.8, 0.8});
    e.expected.kn_witness = Rect{-0.5, 0.5, -0.5, 0.5};
    e.expected.kn_min = 0.1;
    c.push_back(std::move(e));
  }
  {
    CatalogEntry e = make_sum_of_curves("sum_of_curves_paper_literal", parse_curve({"cosh(x)", "sinh(x)", "x", "0"}),
                                        parse_curve({"cosh(y)", "y", "0", "sinh(y)"}), Rect{-0.8, 0.8, -0.8, 0.8});
    e.expected = Expectations{};
    e.expected.has_cnd = false;
    e.expected_failures = {"hyp_alpha_lightlike", "hyp_beta_lightlike"};
    c.push_back(std::move(e));
  }
  {
    CatalogEntry e = make_graph_fg("graph_fg_sum", parse_expr("1.4142135623730951*(x+y)"), parse_expr("x-y"),
                                   Rect{-1.0, 1.0, -1.0, 1.0}, GraphWhich::both);
    e.expected.ruled = e.expected.minimal = e.expected.flat = true;
    c.push_back(std::move(e));
  }
  {
    CatalogEntry e = make_graph_fg("graph_fg_e4", parse_expr("1.4142135623730951*x"), parse_expr("x+y"),
                                   Rect{-1.0, 1.0, -1.0, 1.0}, GraphWhich::e4);
    e.expected.ruled = e.expected.minimal = e.expected.flat = true;
    c.push_back(std::move(e));
  }
  {
    CatalogEntry e = make_graph_fg("graph_fg_nonminimal", parse_expr("1.4142135623730951*(x+y)+0.1*x*y"),
                                   parse_expr("x-y"), Rect{-1.0, 1.0, -1.0, 1.0}, GraphWhich::both);
    e.expected.has_cnd = false;
    e.expected_failures = {"hyp_E_zero", "hyp_G_zero"};
    c.push_back(std::move(e));
  }
  {
    CatalogEntry e = make_graph_fg("graph_fg_nonruled", parse_expr("sinh(y+0.5*x)+0.3*x^2"),
                                   parse_expr("cosh(y+0.5*x)"), Rect{-0.2, 0.6, -0.5, 0.5}, GraphWhich::e3);
    e.expected.iizz_nonzero = true;
    c.push_back(std::move(e));
  }
  {
    CatalogEntry e = make_graph_over_lorentz("cylinder_graph", parse_curve({"x", "cos(y)", "sin(y)"}),
                                             parse_expr("y-x"), Rect{-1.0, 1.0, 0.5, 5.5});
    e.expected.minimal = e.expected.flat = e.expected.flat_normal = e.expected.iizz_nonzero = true;
    c.push_back(std::move(e));
  }
  c.push_back(make_minimal_flat_normal("minimal_flat_normal", parse_curve({"sinh(x)", "cosh(x)", "x", "0"}),
                                       MinkVec{1, 0, 0, 1}, e4, Rect{-1.0, 1.0, -1.0, 1.0}));
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

const CatalogEntry* find_entry(const std::string& id) {
  for (const auto& e : builtin_catalog())
    if (e.id == id) return &e;
  return nullptr;
}

}  // namespace nullgeo
