#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "nullgeo/catalog.hpp"
#include "nullgeo/check.hpp"
#include "nullgeo/error.hpp"
#include "support.hpp"

using namespace nullgeo;

namespace {

// Worst value of a validator record over a grid, and whether it passed everywhere.
struct Probe {
  bool seen = false;
  bool pass = true;
  double worst = 0.0;
};

Probe probe(const CatalogEntry& e, const std::string& name, GridSpec grid = {5, 5}) {
  Probe out;
  for (ChartPoint p : grid_points(e.def.domain, grid)) {
    const Fragment f = e.validator(p, Tolerances{}, FdOptions{});
    for (const Residual& r : f.residuals) {
      if (r.name != name) continue;
      const bool first = !out.seen;
      out.seen = true;
      out.pass = out.pass && r.passes();
      if (r.bound == Bound::at_most)
        out.worst = std::max(out.worst, r.value);
      else
        out.worst = first ? r.value : std::min(out.worst, r.value);
    }
  }
  return out;
}

const Rect kUnit{-1, 1, -1, 1};

}  // namespace

TEST_CASE("catalog order and ids") {
  std::vector<std::string> ids;
  for (const CatalogEntry& c : builtin_catalog()) ids.push_back(c.id);
  const std::vector<std::string> want{"ruled_4d",           "ruled_3d",          "sum_of_curves",
                                      "sum_of_curves_paper_literal", "graph_fg_sum", "graph_fg_e4",
                                      "graph_fg_nonminimal", "graph_fg_nonruled", "cylinder_graph",
                                      "minimal_flat_normal"};
  CHECK(ids == want);
  CHECK(find_entry("nosuch") == nullptr);
  CHECK(find_entry("sum_of_curves_paper_literal")->expected_fail());
  CHECK_FALSE(find_entry("sum_of_curves")->expected_fail());
}

TEST_CASE("every built-in entry passes its check") {
  for (const CatalogEntry& c : builtin_catalog()) {
    const CheckReport r = run_check(c, CheckOptions{});
    INFO(c.id);
    CHECK(r.pass);
    CHECK(r.points == 121);
    for (const RecordSummary& rec : r.records) {
      INFO(rec.name, " value ", rec.value, " tol ", rec.tolerance, " expected_fail ", rec.expected_fail);
      CHECK(rec.pass);
      if (rec.expected_fail) CHECK_FALSE(std::abs(rec.value) <= rec.tolerance);
    }
  }
}

TEST_CASE("ruled_4d validator") {
  const auto alpha = parse_curve({"x", "0", "0", "x"});
  const CatalogEntry ok = make_ruled_4d("r", alpha, parse_curve({"1", "cos(x)", "sin(x)", "0"}), MinkVec::basis(4, 3),
                                        Rect{-1, 1, 0.5, 1.5});
  for (const char* n : {"hyp_alpha_lightlike", "hyp_zt_lightlike", "hyp_zt_perp_Z", "hyp_Z_not_perp_alpha",
                        "hyp_independent"}) {
    const Probe p = probe(ok, n);
    INFO(n);
    CHECK(p.seen);
    CHECK(p.pass);
  }
  const TangentVec zt = detect_null_direction(ok.def, {0, 1}).Zt;
  testing::check_vec(zt.ambient, {-1, -1, 0, 0}, 1e-12);

  const CatalogEntry bad_zt =
      make_ruled_4d("r", alpha, parse_curve({"0", "1", "0", "0"}), MinkVec::basis(4, 3), Rect{-1, 1, 0.5, 1.5});
  CHECK_FALSE(probe(bad_zt, "hyp_zt_lightlike").pass);

  const CatalogEntry perp = make_ruled_4d("r", parse_curve({"x", "x", "0", "0"}), parse_curve({"1", "0", "1", "0"}),
                                          MinkVec::basis(4, 3), Rect{-1, 1, 0.5, 1.5});
  CHECK_FALSE(probe(perp, "hyp_Z_not_perp_alpha").pass);
}

TEST_CASE("ruled_3d validator") {
  const auto alpha = parse_curve({"x", "sin(x)", "1-cos(x)"});
  const MinkVec Z{1, 1, 1};
  CHECK(mink_norm2(Z) == 1.0);
  CHECK(mink_inner(Z, MinkVec{1, 1, 0}) == 0.0);
  const CatalogEntry& ok = *find_entry("ruled_3d");
  for (const char* n : {"hyp_alpha_lightlike", "hyp_T0_lightlike", "hyp_T0_perp_Z", "hyp_independent"})
    CHECK(probe(ok, n).pass);

  const CatalogEntry bad_t0 = make_ruled_3d("r", alpha, MinkVec{1, 0, 0}, Z, Rect{0.3, 1.3, -1, 1});
  CHECK_FALSE(probe(bad_t0, "hyp_T0_lightlike").pass);

  const CatalogEntry parallel = make_ruled_3d("r", parse_curve({"x", "x", "0"}), MinkVec{1, 1, 0}, Z, kUnit);
  CHECK_FALSE(probe(parallel, "hyp_independent").pass);
}

TEST_CASE("sum_of_curves validator") {
  const CatalogEntry& ok = *find_entry("sum_of_curves");
  for (const char* n : {"hyp_alpha_lightlike", "hyp_beta_lightlike", "hyp_alpha_in_e4_perp", "hyp_beta_in_e3_perp",
                        "hyp_alpha_beta_nonorthogonal", "hyp_e3_alpha", "hyp_beta_second_not_lightlike",
                        "e3_tangent_formula"}) {
    INFO(n);
    CHECK(probe(ok, n).pass);
  }

  const CatalogEntry& literal = *find_entry("sum_of_curves_paper_literal");
  const Probe a = probe(literal, "hyp_alpha_lightlike", {11, 11});
  const Probe b = probe(literal, "hyp_beta_lightlike", {11, 11});
  CHECK(std::abs(a.worst - 2.0) <= 1e-9);
  CHECK(std::abs(b.worst - 2.0) <= 1e-9);
  CHECK_FALSE(a.pass);
  CHECK_FALSE(b.pass);

  const CatalogEntry line = make_sum_of_curves("s", parse_curve({"sinh(x)", "cosh(x)", "x", "0"}),
                                               parse_curve({"y", "0", "0", "y"}), Rect{-0.5, 0.5, -0.5, 0.5});
  CHECK(probe(line, "hyp_beta_lightlike").pass);
  CHECK_FALSE(probe(line, "hyp_beta_second_not_lightlike").pass);
}

TEST_CASE("graph_fg examples") {
  const CatalogEntry sum = make_graph_fg("g", parse_expr("1.4142135623730951*(x+y)"), parse_expr("x-y"), kUnit,
                                         GraphWhich::both);
  const FirstForm ff = first_form(point_jets(sum.def, {0.3, -0.2}));
  CHECK(std::abs(ff.E) <= 1e-15);
  CHECK(std::abs(ff.G) <= 1e-15);
  CHECK(ff.F == doctest::Approx(-3.0));
  CHECK(ff.det == doctest::Approx(-9.0));
  for (const char* n : {"hyp_timelike", "det_graph_formula", "hyp_E_zero", "hyp_G_zero", "cnd_e4_iff_E_zero",
                        "cnd_e3_iff_G_zero", "e4_tangent_formula", "e3_tangent_formula"}) {
    INFO(n);
    CHECK(probe(sum, n).pass);
  }

  const CatalogEntry e4only =
      make_graph_fg("g", parse_expr("1.4142135623730951*x"), parse_expr("x+y"), kUnit, GraphWhich::both);
  const FirstForm f2 = first_form(point_jets(e4only.def, {0.1, 0.1}));
  CHECK(std::abs(f2.E) <= 1e-15);
  CHECK(f2.G == doctest::Approx(2.0));
  CHECK(probe(e4only, "hyp_E_zero").pass);
  CHECK_FALSE(probe(e4only, "hyp_G_zero").pass);
  CHECK(probe(e4only, "cnd_e4_iff_E_zero").pass);
  CHECK(probe(e4only, "cnd_e3_iff_G_zero").pass);
  CHECK(detect_null_direction(e4only.def, {0.1, 0.1}).has_cnd);
  CHECK_FALSE(detect_null_direction(with_field(e4only.def, MinkVec::basis(4, 2)), {0.1, 0.1}).has_cnd);

  const CatalogEntry plane = make_graph_fg("g", parse_expr("0"), parse_expr("0"), kUnit, GraphWhich::both);
  const FirstForm f3 = first_form(point_jets(plane.def, {0, 0}));
  CHECK(f3.E == 1.0);
  CHECK(f3.G == 1.0);
  CHECK_FALSE(probe(plane, "hyp_timelike").pass);
  CHECK_FALSE(run_check(plane, CheckOptions{GridSpec{3, 3}, {}, {}}).pass);
}

TEST_CASE("graph_fg minimality iff mixed partials vanish") {
  for (const char* id : {"graph_fg_sum", "graph_fg_nonminimal"}) {
    const CheckReport r = run_check(*find_entry(id), CheckOptions{});
    const RecordSummary* rec = r.find("minimality_iff_fxy_gxy_zero");
    REQUIRE(rec != nullptr);
    INFO(id);
    CHECK(rec->pass);
  }
  // the non-minimal witness fails both sides together
  const CatalogEntry& nm = *find_entry("graph_fg_nonminimal");
  double h = 0.0, mixed = 0.0;
  for (ChartPoint p : grid_points(nm.def.domain, GridSpec{11, 11})) {
    const Fragment f = nm.validator(p, Tolerances{}, FdOptions{});
    h = std::max(h, f.get("H_trace_norm").value_or(0.0));
    mixed = std::max(mixed, f.get("fxy_gxy").value_or(0.0));
  }
  CHECK(h > 1e-3);
  CHECK(mixed == doctest::Approx(0.1));
}

TEST_CASE("graph_over_lorentz examples") {
  const CatalogEntry& cyl = *find_entry("cylinder_graph");
  for (const char* n : {"hyp_M0_lorentzian", "grad_f_null", "laplacian_f", "geodesic_grad_f"}) {
    const Probe p = probe(cyl, n, {11, 11});
    INFO(n, " ", p.worst);
    CHECK(p.seen);
    CHECK(p.pass);
  }
  for (ChartPoint p : grid_points(cyl.def.domain, GridSpec{5, 5})) {
    const NullDirection nd = detect_null_direction(cyl.def, p);
    REQUIRE(nd.has_cnd);
    testing::check_vec(nd.Zt.ambient, {1, -std::sin(p.y), std::cos(p.y), 0}, 1e-12);
  }

  const auto chart = parse_curve({"x", "cos(y)", "sin(y)"});
  const CatalogEntry spacelike = make_graph_over_lorentz("c", chart, parse_expr("y"), Rect{-1, 1, 0.5, 5.5});
  CHECK_FALSE(probe(spacelike, "grad_f_null").pass);
  CHECK_FALSE(detect_null_direction(spacelike.def, {0, 2}).has_cnd);

  const CatalogEntry flat = make_graph_over_lorentz("c", chart, parse_expr("3"), Rect{-1, 1, 0.5, 5.5});
  CHECK_FALSE(detect_null_direction(flat.def, {0, 2}).has_cnd);
  const Fragment f = flat.validator({0, 2}, Tolerances{}, FdOptions{});
  CHECK(std::find(f.notes.begin(), f.notes.end(), "geodesic check: grad f vanishes") != f.notes.end());
}

TEST_CASE("minimal_flat_normal validator") {
  const auto alpha = parse_curve({"sinh(x)", "cosh(x)", "x", "0"});
  const CatalogEntry& ok = *find_entry("minimal_flat_normal");
  for (const char* n : {"hyp_alpha_lightlike", "hyp_W0_lightlike", "hyp_independent", "hyp_Z_perp_alpha", "hyp_Z_W0",
                        "alpha_pregeodesic"}) {
    INFO(n);
    CHECK(probe(ok, n).pass);
  }
  const CatalogEntry bad_w0 = make_minimal_flat_normal("m", alpha, MinkVec{1, 0, 0, 0}, MinkVec::basis(4, 3), kUnit);
  CHECK_FALSE(probe(bad_w0, "hyp_W0_lightlike").pass);
  const CatalogEntry bad_z = make_minimal_flat_normal("m", alpha, MinkVec{1, 0, 0, 1}, MinkVec::basis(4, 2), kUnit);
  const Probe p = probe(bad_z, "hyp_Z_perp_alpha");
  CHECK_FALSE(p.pass);
  CHECK(p.worst == doctest::Approx(1.0));
}

TEST_CASE("constructors reject malformed curves") {
  CHECK_THROWS_AS(make_ruled_3d("r", parse_curve({"x", "0"}), MinkVec{1, 1, 0}, MinkVec{0, 0, 1}, kUnit), UsageError);
  CHECK_THROWS_AS(make_sum_of_curves("s", parse_curve({"x", "0", "0"}), parse_curve({"y", "0", "0", "y"}), kUnit),
                  UsageError);
}
