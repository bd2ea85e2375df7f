#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nullgeo/checks.hpp"
#include "nullgeo/surface.hpp"

namespace nullgeo {

enum class Family { ruled_4d, ruled_3d, sum_of_curves, graph_fg, graph_over_lorentz, minimal_flat_normal, user };
const char* to_string(Family f);

enum class GraphWhich { e3, e4, both };

/// Grid-wide expectations checked after every point is evaluated.
struct Expectations {
  bool has_cnd = true;
  bool ruled = false;           // II(Zt,Zt) = 0, a |II(Zt,Zt)| = 0, |H|^2 = K
  bool minimal = false;         // H = 0
  bool flat = false;            // K = 0
  bool flat_normal = false;     // KN = 0 and G*H = 0
  bool iizz_nonzero = false;
  bool minimality_iff = false;  // graph_fg with both directions
  std::optional<Rect> kn_witness;
  double kn_min = 0.1;
};

struct CatalogEntry {
  std::string id;
  Family family = Family::user;
  SurfaceDef def;
  Expectations expected;
  /// Record names that must fail for the entry to pass.
  std::vector<std::string> expected_failures;
  /// Per-point hypothesis residuals of the construction.
  std::function<Fragment(ChartPoint, const Tolerances&, const FdOptions&)> validator;

  bool expected_fail() const { return !expected_failures.empty(); }
};

using CurveExprs = std::vector<Expr>;

CatalogEntry make_ruled_4d(std::string id, CurveExprs alpha, CurveExprs zt, MinkVec Z, Rect domain);
CatalogEntry make_ruled_3d(std::string id, CurveExprs alpha, MinkVec T0, MinkVec Z, Rect domain);
/// alpha in x, beta in y; Z = e3.
CatalogEntry make_sum_of_curves(std::string id, CurveExprs alpha, CurveExprs beta, Rect domain);
/// psi = (f, g, x, y). Z = e4 unless which = e3.
CatalogEntry make_graph_fg(std::string id, Expr f, Expr g, Rect domain, GraphWhich which);
/// psi = (chart, f) with M0 = chart in R^{2,1} = e4-perp; Z = e4.
CatalogEntry make_graph_over_lorentz(std::string id, CurveExprs chart, Expr f, Rect domain);
CatalogEntry make_minimal_flat_normal(std::string id, CurveExprs alpha, MinkVec W0, MinkVec Z, Rect domain);
CatalogEntry make_user_entry(SurfaceDef def);

/// Built-in entries in stable order.
const std::vector<CatalogEntry>& builtin_catalog();
const CatalogEntry* find_entry(const std::string& id);

CurveExprs parse_curve(const std::vector<std::string>& texts);

}  // namespace nullgeo
