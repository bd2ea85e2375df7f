#include <cmath>

#include "doctest.h"
#include "nullgeo/catalog.hpp"
#include "nullgeo/check.hpp"
#include "nullgeo/error.hpp"
#include "nullgeo/gauss.hpp"
#include "support.hpp"

using namespace nullgeo;

namespace {

const SurfaceDef& builtin(const char* id) { return find_entry(id)->def; }

void check_biv(const Bivector& got, const Bivector& want, double tol) {
  INFO("max diff ", (got - want).max_abs());
  CHECK((got - want).max_abs() <= tol);
}

bool gauss_point(const SurfaceDef& def, ChartPoint p) {
  const PointGeometry g = analyze_point(def, p);
  return g.frame.nu.has_value();
}

// Projective comparison of chart directions.
double direction_gap(const TangentVec& a, const TangentVec& b) {
  const double na = std::hypot(a.p, a.q), nb = std::hypot(b.p, b.q);
  return std::abs(a.p * b.q - a.q * b.p) / (na * nb);
}

}  // namespace

TEST_CASE("wedge examples") {
  check_biv(wedge(MinkVec::basis(4, 0), MinkVec::basis(4, 1)), Bivector::basis(0), 0.0);
  const MinkVec u{0.3, -1.2, 2.0, 0.7};
  CHECK(wedge(u, u).max_abs() == 0.0);
  check_biv(wedge({-1, 0, -1, 0}, {-1, -1, 0, 0}), Bivector({1, -1, 0, -1, 0, 0}), 0.0);
  const MinkVec v{1.0, 0.5, -0.5, 2.0};
  check_biv(wedge(u, v), -wedge(v, u), 0.0);
}

TEST_CASE("star, wedge4 and the hermitian form on the basis") {
  CHECK(star_squared_residual() <= 1e-12);
  for (int s : {1, -1}) {
    for (int k = 0; k < 6; ++k) check_biv(star(star(Bivector::basis(k), s), s), -Bivector::basis(k), 1e-12);
  }
  CHECK(h_form(Bivector::basis(0), Bivector::basis(0)) == std::complex<double>(-1.0, 0.0));
  CHECK(wedge4(Bivector::basis(0), Bivector::basis(5)) == 1.0);
  CHECK(wedge4(Bivector::basis(0), Bivector::basis(5), -1) == -1.0);
  CHECK(h_form(Bivector::basis(3), Bivector::basis(3)) == std::complex<double>(1.0, 0.0));
  // induced metric: e1 is the only timelike vector
  const double want[] = {-1, -1, -1, 1, 1, 1};
  for (int k = 0; k < 6; ++k) CHECK(lambda2_inner(Bivector::basis(k), Bivector::basis(k)) == want[k]);
  // <star a, b> = wedge4(a, b)
  const Bivector a({0.3, -0.1, 0.7, 1.1, 0.2, -0.4}), b({-0.6, 0.5, 0.2, 0.9, -1.3, 0.8});
  CHECK(lambda2_inner(star(a), b) == doctest::Approx(wedge4(a, b)));
  check_biv(cpx_mul_i(a), -star(a), 0.0);
}

TEST_CASE("h_form is complex bilinear") {
  const Bivector a({0.3, -0.1, 0.7, 1.1, 0.2, -0.4}), b({-0.6, 0.5, 0.2, 0.9, -1.3, 0.8});
  const std::complex<double> z(0.4, -1.7);
  const auto lhs = h_form(cpx_scale(z, a), b);
  const auto rhs = z * h_form(a, b);
  CHECK(std::abs(lhs - rhs) <= 1e-12);
  CHECK(std::abs(h_form(a, b) - h_form(b, a)) <= 1e-12);
}

TEST_CASE("gauss_map examples") {
  const PointGeometry g = analyze_point(builtin("sum_of_curves"), {0, 0});
  const Bivector G = gauss_map(g);
  check_biv(G, Bivector({1, -1, 0, -1, 0, 0}), 1e-15);
  CHECK(std::abs(h_form(G, G, g.frame.orientation_sign) + 1.0) <= 1e-9);
  check_biv(gauss_map_chart(g), G, 1e-9);

  CHECK_THROWS_AS(gauss_map(analyze_point(builtin("ruled_4d"), {0, 1})), UnsupportedPointError);
  const SurfaceDef perturbed = make_surface("graph", {"1.4142135623730951*(x+y)+0.05*x^2", "x-y", "x", "y"},
                                            Rect{-0.5, 0.5, -0.5, 0.5}, MinkVec::basis(4, 2));
  CHECK_THROWS_AS(gauss_map(analyze_point(perturbed, {0.1, 0.1})), UnsupportedPointError);

  const PointGeometry m = analyze_point(builtin("minimal_flat_normal"), {0, 0});
  CHECK(std::abs(h_form(gauss_map(m), gauss_map(m), m.frame.orientation_sign) + 1.0) <= 1e-9);
}

TEST_CASE("n1n2 examples") {
  const PointGeometry g = analyze_point(builtin("sum_of_curves"), {0, 0});
  const int s = g.frame.orientation_sign;
  const NPair n = n1n2(g);
  check_biv(n.N2, wedge({1, 1, 1, 0}, {-1, -1, 0, 0}), 1e-15);
  CHECK(std::abs(h_form(n.N1, n.N1, s)) <= 1e-9);
  CHECK(std::abs(h_form(n.N2, n.N2, s)) <= 1e-9);
  CHECK(std::abs(h_form(n.N1, n.N2, s) + 1.0) <= 1e-9);
  CHECK(std::abs(-wedge4(cpx_mul_i(n.N1, s), n.N2, s) - 1.0) <= 1e-9);
  check_biv(cpx_mul_i(n.N1, s), wedge(g.frame.W.ambient, *g.frame.nu), 1e-9);
  check_biv(cpx_mul_i(n.N2, s), -wedge(g.frame.Zt.ambient, *g.frame.nu), 1e-9);
}

TEST_CASE("dgauss examples") {
  const SurfaceDef& s = builtin("sum_of_curves");
  const PointGeometry g = analyze_point(s, {0, 0});
  const NPair n = n1n2(g);
  const Bivector d = dgauss(s, {0, 0}, g.frame.Zt, DgRoute::formula);
  check_biv(d, cpx_mul_i(n.N1, g.frame.orientation_sign), 1e-12);
  check_biv(d, wedge(g.frame.W.ambient, *g.frame.nu), 1e-12);
  CHECK(dgauss(s, {0, 0}, make_tangent(0, 0, g.pj), DgRoute::formula).max_abs() == 0.0);
  check_biv(dgauss(s, {0, 0}, g.frame.W, DgRoute::fd), dgauss(s, {0, 0}, g.frame.W, DgRoute::formula), 1e-5);
}

TEST_CASE("dG routes agree on every valid catalog point") {
  for (const CatalogEntry& c : builtin_catalog()) {
    if (c.def.dim != 4 || !c.expected.has_cnd) continue;
    double worst = 0.0, worst_n = 0.0;
    int valid = 0;
    for (ChartPoint p : grid_points(c.def.domain, GridSpec{7, 7})) {
      if (!gauss_point(c.def, p)) continue;
      ++valid;
      const PointGeometry g = analyze_point(c.def, p);
      for (const TangentVec& X : {g.frame.Zt, g.frame.W, make_tangent(0.3, -0.8, g.pj)}) {
        const Bivector f = dgauss_formula(g, X);
        worst = std::max(worst, (f - dgauss_fd(c.def, g, X, {})).max_abs());
        worst_n = std::max(worst_n, (f - dgauss_formula_n(g, X)).max_abs());
      }
    }
    INFO(c.id, " valid points ", valid, " fd ", worst, " N-form ", worst_n);
    CHECK(worst <= 1e-5);
    CHECK(worst_n <= 1e-9);
  }
}

TEST_CASE("pullback and delta examples") {
  const PointGeometry g = analyze_point(builtin("sum_of_curves"), {0, 0});
  const CpxQuadForm q = pullback_gh(g);
  CHECK(std::abs(q.zz) <= 1e-12);
  CHECK(std::abs(q.ww) <= 1e-12);
  CHECK(std::abs(q.zw - std::complex<double>(0, -1)) <= 1e-12);
  const DeltaData d = delta_and_Delta(g, q);
  CHECK(std::abs(d.zz) <= 1e-12);
  CHECK(std::abs(d.ww) <= 1e-12);
  CHECK(std::abs(d.zw + 1.0) <= 1e-12);
  CHECK(std::abs(d.Delta + 1.0) <= 1e-12);

  const SurfaceDef& m = builtin("minimal_flat_normal");
  for (ChartPoint p : grid_points(m.domain, GridSpec{5, 5})) {
    const PointGeometry gm = analyze_point(m, p);
    const CpxQuadForm qm = pullback_gh(gm);
    CHECK(std::max({std::abs(qm.zz), std::abs(qm.zw), std::abs(qm.ww)}) <= 1e-9);
    const DeltaData dm = delta_and_Delta(gm, qm);
    CHECK(std::abs(dm.Delta) <= 1e-9);
    CHECK(asymptotic_directions(gm, dm, 1.0, 1e-9).all);
  }
}

TEST_CASE("pullback identities on every valid catalog point") {
  for (const CatalogEntry& c : builtin_catalog()) {
    if (c.def.dim != 4 || !c.expected.has_cnd) continue;
    for (ChartPoint p : grid_points(c.def.domain, GridSpec{7, 7})) {
      if (!gauss_point(c.def, p)) continue;
      const PointGeometry g = analyze_point(c.def, p);
      const int s = g.frame.orientation_sign;
      const CpxQuadForm q = pullback_gh(g), qc = pullback_gh_closed(g);
      INFO(c.id, " at (", p.x, ",", p.y, ")");
      CHECK(std::abs(q.zz - qc.zz) <= 1e-6);
      CHECK(std::abs(q.zw - qc.zw) <= 1e-6);
      CHECK(std::abs(q.ww - qc.ww) <= 1e-6);
      const std::complex<double> kk(g.cd.K, g.cd.KN);
      CHECK(std::abs(pullback_disc(q) + kk * kk) <= 1e-6);
      const DeltaData d = delta_and_Delta(g, q);
      CHECK(std::abs(d.Delta + g.cd.KN * g.cd.KN) <= 1e-6);
      CHECK(std::abs(d.zz) <= 1e-9);
      // polarization
      const TangentVec sum = make_tangent(g.frame.Zt.p + g.frame.W.p, g.frame.Zt.q + g.frame.W.q, g.pj);
      const Bivector ds = dgauss_formula(g, sum);
      CHECK(std::abs(0.5 * (h_form(ds, ds, s) - q.zz - q.ww) - q.zw) <= 1e-9);
    }
  }
}

TEST_CASE("asymptotic directions") {
  const PointGeometry g = analyze_point(builtin("sum_of_curves"), {0, 0});
  const AsymptoticDirections a = asymptotic_directions(g, delta_and_Delta(g, pullback_gh(g)), 1.0, 1e-9);
  CHECK_FALSE(a.all);
  REQUIRE(a.directions.size() == 2);
  testing::check_vec(a.directions[0].ambient, g.frame.Zt.ambient, 1e-12);
  testing::check_vec(a.directions[1].ambient, g.frame.W.ambient, 1e-12);

  const SurfaceDef& s = builtin("graph_fg_nonruled");
  int tested = 0;
  for (ChartPoint p : grid_points(s.domain, GridSpec{5, 5})) {
    const PointGeometry h = analyze_point(s, p);
    REQUIRE(h.cd.Hnu);
    if (std::abs(*h.cd.Hnu * h.cd.KN) <= 1e-3) continue;
    ++tested;
    const int sign = h.frame.orientation_sign;
    const AsymptoticDirections b = asymptotic_directions(h, delta_and_Delta(h, pullback_gh(h)), 1.0, 1e-9);
    REQUIRE(b.directions.size() == 2);
    const TangentVec& second = b.directions[1];
    CHECK(direction_gap(second, h.frame.W) > 1e-3);
    const double t = *h.cd.Hnu / h.cd.IIZZ_norm;
    const MinkVec closed = t * h.frame.Zt.ambient + h.frame.W.ambient;
    CHECK((second.ambient - closed).euclid_norm() <= 1e-6);
    // delta vanishes along the root when dG comes from finite differences
    const double vol = -wedge4(cpx_mul_i(n1n2(h).N1, sign), n1n2(h).N2, sign);
    auto delta_fd = [&](const TangentVec& u) {
      const Bivector du = dgauss_fd(s, h, u, {});
      return h_form(du, du, sign).imag() / vol;
    };
    CHECK(std::abs(delta_fd(second)) <= 1e-6);
    CHECK(std::abs(delta_fd(h.frame.Zt)) <= 1e-6);
    CHECK(std::abs(delta_fd(h.frame.W)) > 1e-3);
  }
  CHECK(tested > 0);
}

TEST_CASE("frame scaling leaves the invariants unchanged") {
  for (const CatalogEntry& c : builtin_catalog()) {
    if (c.def.dim != 4 || !c.expected.has_cnd) continue;
    for (ChartPoint p : grid_points(c.def.domain, GridSpec{5, 5})) {
      if (!gauss_point(c.def, p)) continue;
      const PointGeometry g = analyze_point(c.def, p);
      const double cs = 2.0;
      INFO(c.id, " at (", p.x, ",", p.y, ")");
      check_biv(wedge(g.frame.W.ambient / cs, cs * g.frame.Zt.ambient), gauss_map(g), 1e-9);
      const CpxQuadForm q1 = pullback_gh(g, 1.0), q2 = pullback_gh(g, cs);
      CHECK(std::abs(pullback_disc(q1) - pullback_disc(q2)) <= 1e-9);
      const DeltaData d1 = delta_and_Delta(g, q1), d2 = delta_and_Delta(g, q2);
      CHECK(std::abs(d1.Delta - d2.Delta) <= 1e-9);
      const AsymptoticDirections a1 = asymptotic_directions(g, d1, 1.0, 1e-9);
      const AsymptoticDirections a2 = asymptotic_directions(g, d2, cs, 1e-9);
      CHECK(a1.all == a2.all);
      REQUIRE(a1.directions.size() == a2.directions.size());
      for (std::size_t k = 0; k < a1.directions.size(); ++k)
        CHECK(direction_gap(a1.directions[k], a2.directions[k]) <= 1e-9);
    }
  }
}
