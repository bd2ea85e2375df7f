#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nullgeo/catalog.hpp"
#include "nullgeo/checks.hpp"

namespace nullgeo {

struct GridSpec {
  int nx = 11;
  int ny = 11;
};

/// Parses "NxM". Throws UsageError.
GridSpec parse_grid(const std::string& text);

/// Row-major (y outer, x inner) samples of the rectangle shrunk by inset times
/// its width and height on each side, so FD stencils stay inside. Odd counts
/// hit the centre exactly.
std::vector<ChartPoint> grid_points(const Rect& r, GridSpec g, double inset = 0.01);

/// Worker count: NULLGEO_THREADS if set, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on a worker pool. Exceptions propagate.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct RecordSummary {
  std::string name;
  std::string identity;
  Bound bound = Bound::at_most;
  double tolerance = 0.0;
  double value = 0.0;  // max (at_most) or min (at_least) over points
  std::optional<ChartPoint> worst_point;
  int points = 0;
  bool expected_fail = false;
  bool pass = false;
};

struct NoteSummary {
  std::string text;
  int count = 0;
  ChartPoint first;
};

struct CheckReport {
  std::string id;
  std::string label;
  std::string family;
  GridSpec grid;
  int points = 0;
  int skipped_points = 0;  // points without any frame-dependent suite
  std::vector<RecordSummary> records;
  std::vector<NoteSummary> notes;
  bool expected_fail = false;
  bool pass = false;

  const RecordSummary* find(const std::string& name) const;
};

struct CheckOptions {
  GridSpec grid;
  Tolerances tol;
  FdOptions fd;
};

CheckReport run_check(const CatalogEntry& entry, const CheckOptions& opt);

/// Deterministic JSON: fixed key order, 17 significant digits, non-finite as null.
std::string report_to_json(const CheckReport& r);

/// Scan columns: E F G K a KN Hnorm2 Delta.
const std::vector<std::string>& scan_field_names();
/// CSV with header "x,y,<fields>,note"; unavailable values print as nan.
std::string scan_csv(const SurfaceDef& def, GridSpec grid, const std::vector<std::string>& fields,
                     double tol = 1e-9);

}  // namespace nullgeo
