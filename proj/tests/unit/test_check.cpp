#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "nullgeo/catalog.hpp"
#include "nullgeo/check.hpp"
#include "nullgeo/error.hpp"

using namespace nullgeo;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> cells(const std::string& row) {
  std::vector<std::string> out;
  std::stringstream in(row);
  for (std::string c; std::getline(in, c, ',');) out.push_back(c);
  if (!row.empty() && row.back() == ',') out.emplace_back();
  return out;
}

std::string check_json(const char* id, const char* threads) {
  setenv("NULLGEO_THREADS", threads, 1);
  const std::string out = report_to_json(run_check(*find_entry(id), CheckOptions{}));
  unsetenv("NULLGEO_THREADS");
  return out;
}

}  // namespace

TEST_CASE("parse_grid") {
  CHECK(parse_grid("11x11").nx == 11);
  CHECK(parse_grid("3x5").ny == 5);
  for (const char* bad : {"", "11", "x11", "0x3", "3x", "3x-1", "axb", "3x3x3"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_grid(bad), UsageError);
  }
}

TEST_CASE("grid points are row-major and hit the centre") {
  const Rect r{-1, 1, 0, 2};
  const auto pts = grid_points(r, GridSpec{3, 5});
  REQUIRE(pts.size() == 15);
  CHECK(pts[1].y == pts[0].y);
  CHECK(pts[1].x > pts[0].x);
  CHECK(pts[3].y > pts[0].y);
  CHECK(pts[7].x == 0.0);
  CHECK(pts[7].y == 1.0);
  for (ChartPoint p : pts) {
    CHECK(p.x > r.x_lo);
    CHECK(p.x < r.x_hi);
  }
  CHECK(pts.front().x == doctest::Approx(-0.98));
}

TEST_CASE("residual bounds") {
  CHECK(Residual{"a", "", 1e-7, 1e-6}.passes());
  CHECK_FALSE(Residual{"a", "", 1e-5, 1e-6}.passes());
  CHECK_FALSE(Residual{"a", "", NAN, 1e-6}.passes());
  CHECK(Residual{"a", "", 0.5, 0.1, Bound::at_least}.passes());
  CHECK_FALSE(Residual{"a", "", 0.05, 0.1, Bound::at_least}.passes());
}

TEST_CASE("report JSON is deterministic across thread counts") {
  for (const char* id : {"sum_of_curves", "graph_fg_nonminimal", "ruled_3d"}) {
    const std::string one = check_json(id, "1");
    INFO(id);
    CHECK(one == check_json(id, "1"));
    CHECK(one == check_json(id, "3"));
    CHECK(one == check_json(id, "8"));
  }
}

TEST_CASE("report JSON content") {
  const CheckReport r = run_check(*find_entry("sum_of_curves"), CheckOptions{});
  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["id"] == "sum_of_curves");
  CHECK(j["pass"] == true);
  CHECK(j["points"] == 121);
  bool found = false;
  for (const auto& rec : j["records"]) {
    if (rec["name"] != "Delta_identity") continue;
    found = true;
    CHECK(rec["max_residual"].get<double>() <= 1e-6);
    CHECK(rec["pass"] == true);
  }
  CHECK(found);

  const CheckReport lit = run_check(*find_entry("sum_of_curves_paper_literal"), CheckOptions{});
  const auto jl = nlohmann::json::parse(report_to_json(lit));
  CHECK(jl["expected_fail"] == true);
  CHECK(jl["pass"] == true);
}

TEST_CASE("scan CSV examples") {
  const std::string csv = scan_csv(find_entry("sum_of_curves")->def, GridSpec{11, 11}, {"K", "KN"});
  const auto rows = lines(csv);
  REQUIRE(rows.size() == 122);
  CHECK(rows[0] == "x,y,K,KN,note");
  const auto centre = cells(rows[1 + 60]);
  REQUIRE(centre.size() == 5);
  CHECK(std::stod(centre[0]) == 0.0);
  CHECK(std::stod(centre[1]) == 0.0);
  CHECK(std::abs(std::stod(centre[2])) <= 1e-6);
  CHECK(std::abs(std::stod(centre[3]) - 1.0) <= 1e-6);
  CHECK(centre[3] == "1.000000e+00");

  const auto ruled = lines(scan_csv(find_entry("ruled_4d")->def, GridSpec{5, 5}, {"Delta"}));
  REQUIRE(ruled.size() == 26);
  for (std::size_t i = 1; i < ruled.size(); ++i) {
    const auto c = cells(ruled[i]);
    CHECK(c[2] == "nan");
    CHECK_FALSE(c[3].empty());
  }

  CHECK_THROWS_AS(scan_csv(find_entry("ruled_4d")->def, GridSpec{3, 3}, {}), UsageError);
  CHECK_THROWS_AS(scan_csv(find_entry("ruled_4d")->def, GridSpec{3, 3}, {"Q"}), UsageError);
}

TEST_CASE("scan CSV is deterministic across thread counts") {
  const SurfaceDef& def = find_entry("cylinder_graph")->def;
  setenv("NULLGEO_THREADS", "1", 1);
  const std::string a = scan_csv(def, GridSpec{9, 9}, scan_field_names());
  setenv("NULLGEO_THREADS", "5", 1);
  const std::string b = scan_csv(def, GridSpec{9, 9}, scan_field_names());
  unsetenv("NULLGEO_THREADS");
  CHECK(a == b);
}

TEST_CASE("tolerance overrides change the verdict") {
  CheckOptions strict;
  strict.tol.second_fd = 1e-14;
  const CheckReport r = run_check(*find_entry("sum_of_curves"), strict);
  CHECK_FALSE(r.pass);
  const RecordSummary* rec = r.find("K_equals_Zt_a");
  REQUIRE(rec != nullptr);
  CHECK_FALSE(rec->pass);
  CHECK(rec->worst_point.has_value());
}
