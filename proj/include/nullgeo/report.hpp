#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nullgeo {

enum class Bound { at_most, at_least };

/// One named residual at one chart point.
struct Residual {
  std::string name;
  std::string identity;
  double value = 0.0;
  double tol = 0.0;
  Bound bound = Bound::at_most;
  bool passes() const;
};

/// Per-point output of a check suite. Observations are raw values that
/// grid-level rules aggregate after every point is in.
struct Fragment {
  std::vector<Residual> residuals;
  std::vector<std::pair<std::string, double>> observations;
  std::vector<std::string> notes;

  void add(std::string name, std::string identity, double value, double tol, Bound bound = Bound::at_most);
  void observe(std::string name, double value);
  void note(std::string text);
  std::optional<double> get(const std::string& name) const;
  void merge(Fragment&& other);
  bool empty() const { return residuals.empty() && observations.empty() && notes.empty(); }
};

}  // namespace nullgeo
