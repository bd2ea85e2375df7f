#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nullgeo/expr.hpp"
#include "nullgeo/jet.hpp"
#include "nullgeo/mink.hpp"


namespace nullgeo {

struct ChartPoint {
  double x = 0.0;
  double y = 0.0;
};

struct Rect {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;

  bool contains(ChartPoint p) const { return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi; }
  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
};

/// An immersion psi: Rect -> R^{dim-1,1} together with the constant field Z.
/// Immutable after construction; Z is stored normalized to <Z,Z> = 1.
struct SurfaceDef {
  std::string label;
  int dim = 4;
  std::vector<Expr> coords;
  Rect domain;
  MinkVec Z;
};

/// Validates and normalizes. Throws UsageError on bad dimension, an empty
/// domain, or a Z that is not spacelike.
SurfaceDef make_surface(std::string label, std::vector<Expr> coords, Rect domain, MinkVec Z);
SurfaceDef make_surface(std::string label, const std::vector<std::string>& coord_texts, Rect domain, MinkVec Z);

/// Same chart and coordinates, different constant field.
SurfaceDef with_field(const SurfaceDef& def, const MinkVec& Z);

/// Jet of every coordinate at (u,v). Out-of-domain points raise RangeError;
/// evaluation-domain failures are re-raised naming the coordinate and point.
std::vector<Jet2> eval_immersion_jet(const SurfaceDef& def, double u, double v);

/// psi and its first and second partials as ambient vectors.
struct PointJets {
  MinkVec pos, px, py, pxx, pxy, pyy;
};

PointJets point_jets(const SurfaceDef& def, ChartPoint p);
PointJets point_jets(const std::vector<Jet2>& jets);

/// Plain evaluation of psi (no derivatives).
MinkVec eval_position(const SurfaceDef& def, ChartPoint p);

// Surface JSON: {"label", "dim", "coords", "domain": {"x": [lo,hi], "y": [lo,hi]}, "Z"}.
std::string surface_to_json(const SurfaceDef& def);
SurfaceDef surface_from_json(const std::string& text);
SurfaceDef load_surface_file(const std::filesystem::path& path);

}  // namespace nullgeo
