#include "nullgeo/report.hpp"

#include <cmath>

namespace nullgeo {

bool Residual::passes() const {
  if (!std::isfinite(value)) return false;
  return bound == Bound::at_most ? value <= tol : value >= tol;
}

void Fragment::add(std::string name, std::string identity, double value, double tol, Bound bound) {
  residuals.push_back({std::move(name), std::move(identity), value, tol, bound});
}

void Fragment::observe(std::string name, double value) { observations.emplace_back(std::move(name), value); }

void Fragment::note(std::string text) { notes.push_back(std::move(text)); }

std::optional<double> Fragment::get(const std::string& name) const {
  for (const auto& [k, v] : observations)
    if (k == name) return v;
  return std::nullopt;
}

void Fragment::merge(Fragment&& other) {
  for (auto& r : other.residuals) residuals.push_back(std::move(r));
  for (auto& o : other.observations) observations.push_back(std::move(o));
  for (auto& n : other.notes) notes.push_back(std::move(n));
}

}  // namespace nullgeo
