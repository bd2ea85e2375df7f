#include "nullgeo/surface.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nullgeo/error.hpp"

namespace nullgeo {

SurfaceDef make_surface(std::string label, std::vector<Expr> coords, Rect domain, MinkVec Z) {
  const int dim = static_cast<int>(coords.size());
  if (dim != 3 && dim != 4) throw UsageError("surface needs 3 or 4 coordinate expressions");
  if (Z.dim() != dim) throw UsageError("Z dimension does not match the coordinate count");
  if (!(domain.x_lo < domain.x_hi) || !(domain.y_lo < domain.y_hi)) throw UsageError("empty domain rectangle");
  const double q = mink_norm2(Z);
  if (!(q > 0.0)) throw UsageError("Z must be spacelike, got <Z,Z> = " + std::to_string(q));
  return SurfaceDef{std::move(label), dim, std::move(coords), domain, Z / std::sqrt(q)};
}

SurfaceDef make_surface(std::string label, const std::vector<std::string>& coord_texts, Rect domain, MinkVec Z) {
  std::vector<Expr> coords;
  coords.reserve(coord_texts.size());
  for (const auto& t : coord_texts) coords.push_back(parse_expr(t));
  return make_surface(std::move(label), std::move(coords), domain, Z);
}

SurfaceDef with_field(const SurfaceDef& def, const MinkVec& Z) {
  return make_surface(def.label, def.coords, def.domain, Z);
}

std::vector<Jet2> eval_immersion_jet(const SurfaceDef& def, double u, double v) {
  if (!def.domain.contains({u, v})) {
    std::ostringstream os;
    os.precision(17);
    os << "point (" << u << ", " << v << ") outside the domain of " << def.label;
    throw RangeError(os.str());
  }
  std::vector<Jet2> out;
  out.reserve(def.coords.size());
  for (std::size_t k = 0; k < def.coords.size(); ++k) {
    try {
      out.push_back(eval_jet(def.coords[k], u, v));
    } catch (const EvaluationDomainError& e) {
      std::ostringstream os;
      os.precision(17);
      os << e.what() << " (coordinate " << k << " at (" << u << ", " << v << "))";
      throw EvaluationDomainError(os.str());
    }
  }
  return out;
}

PointJets point_jets(const std::vector<Jet2>& jets) {
  const int dim = static_cast<int>(jets.size());
  PointJets pj{MinkVec(dim), MinkVec(dim), MinkVec(dim), MinkVec(dim), MinkVec(dim), MinkVec(dim)};
  for (int k = 0; k < dim; ++k) {
    const Jet2& j = jets[static_cast<std::size_t>(k)];
    pj.pos[k] = j.v;
    pj.px[k] = j.dx;
    pj.py[k] = j.dy;
    pj.pxx[k] = j.dxx;
    pj.pxy[k] = j.dxy;
    pj.pyy[k] = j.dyy;
  }
  return pj;
}

PointJets point_jets(const SurfaceDef& def, ChartPoint p) { return point_jets(eval_immersion_jet(def, p.x, p.y)); }

MinkVec eval_position(const SurfaceDef& def, ChartPoint p) {
  if (!def.domain.contains(p)) throw RangeError("point outside the domain of " + def.label);
  MinkVec out(def.dim);
  for (int k = 0; k < def.dim; ++k) out[k] = eval_value(def.coords[static_cast<std::size_t>(k)], p.x, p.y);
  return out;
}

std::string surface_to_json(const SurfaceDef& def) {
  nlohmann::ordered_json j;
  j["label"] = def.label;
  j["dim"] = def.dim;
  auto coords = nlohmann::ordered_json::array();
  for (const auto& c : def.coords) coords.push_back(print_expr(c));
  j["coords"] = coords;
  j["domain"]["x"] = {def.domain.x_lo, def.domain.x_hi};
  j["domain"]["y"] = {def.domain.y_lo, def.domain.y_hi};
  auto z = nlohmann::ordered_json::array();
  for (int k = 0; k < def.dim; ++k) z.push_back(def.Z[k]);
  j["Z"] = z;
  return j.dump(2) + "\n";
}

SurfaceDef surface_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("surface JSON: ") + e.what());
  }
  try {
    const std::string label = j.at("label").get<std::string>();
    const int dim = j.at("dim").get<int>();
    const auto coords = j.at("coords").get<std::vector<std::string>>();
    const auto xr = j.at("domain").at("x").get<std::vector<double>>();
    const auto yr = j.at("domain").at("y").get<std::vector<double>>();
    const auto z = j.at("Z").get<std::vector<double>>();
    if (dim != 3 && dim != 4) throw LoadError("surface JSON: dim must be 3 or 4");
    if (static_cast<int>(coords.size()) != dim || static_cast<int>(z.size()) != dim) {
      throw LoadError("surface JSON: coords and Z must have dim entries");
    }
    if (xr.size() != 2 || yr.size() != 2) throw LoadError("surface JSON: domain ranges must be [lo, hi]");
    MinkVec Z(dim);
    for (int k = 0; k < dim; ++k) Z[k] = z[static_cast<std::size_t>(k)];
    return make_surface(label, coords, Rect{xr[0], xr[1], yr[0], yr[1]}, Z);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("surface JSON: ") + e.what());
  } catch (const ParseError& e) {
    throw LoadError(std::string("surface JSON coordinate: ") + e.what());
  } catch (const UsageError& e) {
    throw LoadError(std::string("surface JSON: ") + e.what());
  }
}

SurfaceDef load_surface_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open surface file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return surface_from_json(ss.str());
}

}  // namespace nullgeo
