#include "nullgeo/check.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "nullgeo/error.hpp"
#include "nullgeo/gauss.hpp"

namespace nullgeo {

GridSpec parse_grid(const std::string& text) {
  const auto x = text.find('x');
  GridSpec g;
  auto num = [&](std::string_view s, int& out) {
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc() && r.ptr == s.data() + s.size();
  };
  if (x == std::string::npos || !num(std::string_view(text).substr(0, x), g.nx) ||
      !num(std::string_view(text).substr(x + 1), g.ny) || g.nx < 1 || g.ny < 1)
    throw UsageError("grid must look like NxM with positive N, M (got '" + text + "')");
  return g;
}

std::vector<ChartPoint> grid_points(const Rect& r, GridSpec g, double inset) {
  auto axis = [inset](double lo, double hi, int n, int i) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo) * (1.0 - 2.0 * inset);
    if (n == 1) return mid;
    return mid + half * (2.0 * i / (n - 1) - 1.0);
  };
  std::vector<ChartPoint> pts;
  pts.reserve(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny));
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) pts.push_back({axis(r.x_lo, r.x_hi, g.nx, i), axis(r.y_lo, r.y_hi, g.ny, j)});
  return pts;
}

unsigned worker_count() {
  if (const char* env = std::getenv("NULLGEO_THREADS")) {
    int n = 0;
    const std::string_view s(env);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), n);
    if (r.ec == std::errc() && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

const RecordSummary* CheckReport::find(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

template <typename Suite>
void run_suite(Fragment& out, const char* name, Suite&& suite) {
  try {
    out.merge(suite());
  } catch (const RangeError&) {
    out.note(std::string(name) + " suite skipped: stencil leaves the domain");
  } catch (const FrameError&) {
    out.note(std::string(name) + " suite skipped: no canonical null direction on the stencil");
  } catch (const DegenerateMetricError&) {
    out.note(std::string(name) + " suite skipped: stencil reaches a non-timelike point");
  } catch (const UnsupportedPointError&) {
    out.note(std::string(name) + " suite skipped: II(Zt,Zt) = 0 on the stencil");
  }
}

struct PointResult {
  Fragment frag;
  bool skipped = false;
};

PointResult evaluate_point(const CatalogEntry& e, ChartPoint p, const CheckOptions& o) {
  PointResult r;
  Fragment& out = r.frag;
  const SurfaceDef& def = e.def;
  if (e.validator) {
    try {
      out.merge(e.validator(p, o.tol, o.fd));
    } catch (const Error& ex) {
      out.note(std::string("validator failed: ") + ex.what());
    }
  }
  run_suite(out, "jet-vs-FD", [&] {
    Fragment f;
    f.add("jet_vs_fd", "jet partials = FD of psi (relative)", jet_vs_fd(def, p, o.fd), o.tol.first_fd);
    return f;
  });

  PointGeometry g;
  try {
    g = analyze_point(def, p, o.tol.frame);
  } catch (const DegenerateMetricError&) {
    out.note("point skipped: surface not timelike");
    out.observe("no_cnd", 1.0);
    r.skipped = true;
    return r;
  } catch (const FrameError&) {
    out.note("point skipped: no canonical null direction");
    out.observe("no_cnd", 1.0);
    r.skipped = true;
    return r;
  }
  // The identities need the null direction on a neighbourhood, not only at p.
  const double h = o.fd.h;
  bool seed_switch = false;
  for (const ChartPoint q : {ChartPoint{p.x + h, p.y}, ChartPoint{p.x - h, p.y}, ChartPoint{p.x, p.y + h},
                             ChartPoint{p.x, p.y - h}}) {
    try {
      seed_switch = seed_switch || build_adapted_frame(def, q, o.tol.frame).seed != g.frame.seed;
    } catch (const RangeError&) {
    } catch (const Error&) {
      out.note("point skipped: null direction does not extend to a neighbourhood");
      out.observe("no_cnd", 1.0);
      r.skipped = true;
      return r;
    }
  }
  if (seed_switch) out.note("W seed switches inside the stencil (W is seed independent; point kept)");
  out.observe("no_cnd", 0.0);
  out.merge(frame_residuals(g, o.tol));

  run_suite(out, "compatibility", [&] { return compatibility_residuals(def, p, o.tol, o.fd); });
  run_suite(out, "identity", [&] { return identity_residuals(def, p, o.tol, o.fd); });
  if (def.dim == 4) run_suite(out, "gauss-map", [&] { return gauss_residuals(def, p, o.tol, o.fd); });
  return r;
}

struct ObsStat {
  double max = -INFINITY;
  double min = INFINITY;
  double max_abs = 0.0;
  ChartPoint at_max, at_min, at_max_abs;
  int n = 0;
};

bool worse(const Residual& r, double current) {
  if (std::isnan(r.value)) return !std::isnan(current);
  if (std::isnan(current)) return false;
  return r.bound == Bound::at_most ? r.value > current : r.value < current;
}

class Aggregator {
 public:
  void add(const Residual& r, ChartPoint p) {
    auto [it, inserted] = index_.try_emplace(r.name, records_.size());
    if (inserted) {
      RecordSummary s;
      s.name = r.name;
      s.identity = r.identity;
      s.bound = r.bound;
      s.tolerance = r.tol;
      s.value = r.value;
      s.worst_point = p;
      records_.push_back(std::move(s));
    } else {
      RecordSummary& s = records_[it->second];
      if (worse(r, s.value)) {
        s.value = r.value;
        s.worst_point = p;
      }
    }
    records_[index_[r.name]].points++;
  }

  void grid_record(std::string name, std::string identity, double value, double tol, Bound bound,
                   std::optional<ChartPoint> at) {
    RecordSummary s;
    s.name = std::move(name);
    s.identity = std::move(identity);
    s.bound = bound;
    s.tolerance = tol;
    s.value = value;
    s.worst_point = at;
    s.points = 1;
    index_[s.name] = records_.size();
    records_.push_back(std::move(s));
  }

  void observe(const std::string& name, double v, ChartPoint p) {
    ObsStat& s = obs_[name];
    if (s.n == 0 || v > s.max) s.max = v, s.at_max = p;
    if (s.n == 0 || v < s.min) s.min = v, s.at_min = p;
    if (s.n == 0 || std::abs(v) > s.max_abs) s.max_abs = std::abs(v), s.at_max_abs = p;
    s.n++;
  }

  void note(const std::string& text, ChartPoint p) {
    auto [it, inserted] = note_index_.try_emplace(text, notes_.size());
    if (inserted) notes_.push_back({text, 0, p});
    notes_[it->second].count++;
  }

  const ObsStat* stat(const std::string& name) const {
    auto it = obs_.find(name);
    return it == obs_.end() ? nullptr : &it->second;
  }

  std::vector<RecordSummary> records_;
  std::vector<NoteSummary> notes_;

 private:
  std::map<std::string, std::size_t> index_;
  std::map<std::string, ObsStat> obs_;
  std::map<std::string, std::size_t> note_index_;
};

constexpr double kNonzero = 1e-3;

void grid_rules(const CatalogEntry& e, const CheckOptions& o, Aggregator& agg) {
  const Tolerances& t = o.tol;
  const ObsStat* a = agg.stat("a");
  const ObsStat* k = agg.stat("K");
  if (a && k && a->max_abs <= t.first_fd)
    agg.grid_record("a_zero_implies_K_zero", "a = 0 on the grid => K = 0", k->max_abs, t.first_fd, Bound::at_most,
                    k->at_max_abs);
  const ObsStat* cross = agg.stat("grad_a_cross_Zt");
  if (k && cross && k->max_abs <= t.first_fd && cross->n == k->n) {
    agg.grid_record("grad_a_parallel_Zt", "K = 0 on the grid => ∇a = a1 Zt", cross->max_abs, t.first_fd,
                    Bound::at_most, cross->at_max_abs);
    if (const ObsStat* h = agg.stat("a1_laplacian"))
      agg.grid_record("a1_harmonic", "K = 0 on the grid => Δa1 = 0", h->max_abs, t.second_fd, Bound::at_most,
                      h->at_max_abs);
  }
  const ObsStat* iizz = agg.stat("IIZZ_norm");
  const ObsStat* hn = agg.stat("H_norm");
  const ObsStat* npz = agg.stat("nabla_perp_Zperp");
  if (iizz && hn && npz && iizz->max_abs <= t.frame) {
    const bool parallel = npz->max_abs <= t.first_fd;
    const bool minimal = hn->max_abs <= t.ruled;
    agg.grid_record("normal_parallel_iff_minimal", "II(Zt,Zt) = 0: Z⊥ parallel iff H = 0",
                    parallel == minimal ? 0.0 : 1.0, 0.0, Bound::at_most, npz->at_max_abs);
  }

  const Expectations& x = e.expected;
  auto expect_max = [&](const char* rec, const char* ident, const char* obs, double tol) {
    const ObsStat* s = agg.stat(obs);
    agg.grid_record(rec, ident, s ? s->max_abs : NAN, tol, Bound::at_most,
                    s ? std::optional(s->at_max_abs) : std::nullopt);
  };
  if (x.has_cnd) {
    const ObsStat* s = agg.stat("no_cnd");
    double missing = NAN;
    std::optional<ChartPoint> at;
    if (s) {
      missing = s->max;
      at = s->at_max;
    }
    agg.grid_record("expect_has_cnd", "canonical null direction at every grid point", missing, 0.0, Bound::at_most,
                    at);
  }
  if (x.ruled) {
    expect_max("expect_IIZZ_zero", "II(Zt,Zt) = 0", "IIZZ_norm", t.frame);
    expect_max("expect_a_IIZZ_zero", "a |II(Zt,Zt)| = 0 (R⊥ = 0)", "a_IIZZ", t.frame);
    expect_max("expect_ruled_gap", "|H|^2 - K = 0", "ruled_gap", t.ruled);
  }
  if (x.minimal) expect_max("expect_minimal", "H = 0", "H_norm", t.ruled);
  if (x.flat) expect_max("expect_flat", "K = 0", "K", t.ruled);
  if (x.flat_normal) {
    expect_max("expect_KN_zero", "KN = 0", "KN", t.frame);
    expect_max("expect_GH_zero", "G*H = 0", "GH_max", t.frame);
  }
  if (x.iizz_nonzero) {
    const ObsStat* s = agg.stat("IIZZ_norm");
    agg.grid_record("expect_IIZZ_nonzero", "II(Zt,Zt) != 0", s ? s->min : NAN, kNonzero, Bound::at_least,
                    s ? std::optional(s->at_min) : std::nullopt);
  }
  if (x.kn_witness) {
    const std::vector<ChartPoint> pts = grid_points(*x.kn_witness, o.grid, 0.0);
    std::vector<double> kn(pts.size(), NAN);
    parallel_for(pts.size(), [&](std::size_t i) {
      try {
        kn[i] = analyze_point(e.def, pts[i], t.frame).cd.KN;
      } catch (const Error&) {
      }
    });
    double lo = INFINITY;
    ChartPoint at{};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::isnan(kn[i])) {
        lo = NAN;
        at = pts[i];
        break;
      }
      if (kn[i] < lo) lo = kn[i], at = pts[i];
    }
    agg.grid_record("expect_KN_witness", "KN >= threshold on the witness rectangle", lo, x.kn_min, Bound::at_least,
                    at);
  }
  if (x.minimality_iff) {
    const ObsStat* h = agg.stat("H_trace_norm");
    const ObsStat* f = agg.stat("fxy_gxy");
    double v = NAN;
    if (h && f) v = ((h->max_abs <= t.ruled) == (f->max_abs <= t.frame)) ? 0.0 : 1.0;
    agg.grid_record("minimality_iff_fxy_gxy_zero", "H = 0 iff f_xy = g_xy = 0", v, 0.0, Bound::at_most,
                    h ? std::optional(h->at_max_abs) : std::nullopt);
  }
  if (e.def.dim == 4)
    agg.grid_record("star_squared", "star^2 = -id on the six basis bivectors", star_squared_residual(), t.star,
                    Bound::at_most, std::nullopt);
}

bool record_passes(const RecordSummary& r) {
  Residual tmp{r.name, r.identity, r.value, r.tolerance, r.bound};
  return tmp.passes();
}

}  // namespace

CheckReport run_check(const CatalogEntry& entry, const CheckOptions& opt) {
  const std::vector<ChartPoint> pts = grid_points(entry.def.domain, opt.grid);
  std::vector<PointResult> results(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { results[i] = evaluate_point(entry, pts[i], opt); });

  Aggregator agg;
  CheckReport rep;
  rep.id = entry.id;
  rep.label = entry.def.label;
  rep.family = to_string(entry.family);
  rep.grid = opt.grid;
  rep.points = static_cast<int>(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Fragment& f = results[i].frag;
    if (results[i].skipped) rep.skipped_points++;
    for (const auto& r : f.residuals) agg.add(r, pts[i]);
    for (const auto& [name, v] : f.observations) agg.observe(name, v, pts[i]);
    for (const auto& n : f.notes) agg.note(n, pts[i]);
  }
  grid_rules(entry, opt, agg);

  rep.records = std::move(agg.records_);
  rep.notes = std::move(agg.notes_);
  const std::set<std::string> expected(entry.expected_failures.begin(), entry.expected_failures.end());
  for (const auto& name : entry.expected_failures) {
    if (!rep.find(name)) {
      RecordSummary missing;
      missing.name = name;
      missing.identity = "declared failure was never evaluated";
      missing.value = NAN;
      rep.records.push_back(missing);
    }
  }
  rep.expected_fail = entry.expected_fail();
  rep.pass = true;
  for (auto& r : rep.records) {
    r.expected_fail = expected.count(r.name) > 0;
    const bool ok = record_passes(r);
    r.pass = r.expected_fail ? (!ok && !std::isnan(r.value)) : ok;
    rep.pass = rep.pass && r.pass;
  }
  return rep;
}

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);  // no "-0"
  return buf;
}

std::string str(const std::string& s) { return nlohmann::json(s).dump(); }

std::string point(const std::optional<ChartPoint>& p) {
  if (!p) return "null";
  return "[" + num(p->x) + ", " + num(p->y) + "]";
}

}  // namespace

std::string report_to_json(const CheckReport& r) {
  std::string o = "{\n";
  o += "  \"id\": " + str(r.id) + ",\n";
  o += "  \"label\": " + str(r.label) + ",\n";
  o += "  \"family\": " + str(r.family) + ",\n";
  o += "  \"grid\": " + str(std::to_string(r.grid.nx) + "x" + std::to_string(r.grid.ny)) + ",\n";
  o += "  \"points\": " + std::to_string(r.points) + ",\n";
  o += "  \"skipped_points\": " + std::to_string(r.skipped_points) + ",\n";
  o += "  \"expected_fail\": " + std::string(r.expected_fail ? "true" : "false") + ",\n";
  o += "  \"pass\": " + std::string(r.pass ? "true" : "false") + ",\n";
  o += "  \"records\": [";
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const RecordSummary& s = r.records[i];
    o += i ? ",\n" : "\n";
    o += "    {\"name\": " + str(s.name) + ", \"identity\": " + str(s.identity);
    o += s.bound == Bound::at_most ? ", \"max_residual\": " : ", \"min_value\": ";
    o += num(s.value);
    o += ", \"tolerance\": " + num(s.tolerance);
    o += ", \"worst_point\": " + point(s.worst_point);
    o += ", \"points\": " + std::to_string(s.points);
    o += ", \"expected_fail\": " + std::string(s.expected_fail ? "true" : "false");
    o += ", \"pass\": " + std::string(s.pass ? "true" : "false") + "}";
  }
  o += r.records.empty() ? "],\n" : "\n  ],\n";
  o += "  \"notes\": [";
  for (std::size_t i = 0; i < r.notes.size(); ++i) {
    const NoteSummary& n = r.notes[i];
    o += i ? ",\n" : "\n";
    o += "    {\"text\": " + str(n.text) + ", \"count\": " + std::to_string(n.count) +
         ", \"first_point\": " + point(n.first) + "}";
  }
  o += r.notes.empty() ? "]\n" : "\n  ]\n";
  o += "}\n";
  return o;
}

const std::vector<std::string>& scan_field_names() {
  static const std::vector<std::string> names{"E", "F", "G", "K", "a", "KN", "Hnorm2", "Delta"};
  return names;
}

std::string scan_csv(const SurfaceDef& def, GridSpec grid, const std::vector<std::string>& fields, double tol) {
  if (fields.empty()) throw UsageError("scan needs at least one field");
  for (const auto& f : fields)
    if (std::find(scan_field_names().begin(), scan_field_names().end(), f) == scan_field_names().end())
      throw UsageError("unknown scan field '" + f + "'");

  const std::vector<ChartPoint> pts = grid_points(def.domain, grid);
  std::vector<std::string> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const ChartPoint p = pts[i];
    std::map<std::string, double> v;
    std::vector<std::string> notes;
    auto note = [&notes](const std::string& n) {
      if (std::find(notes.begin(), notes.end(), n) == notes.end()) notes.push_back(n);
    };
    try {
      const PointJets pj = point_jets(def, p);
      const FirstForm ff = first_form(pj);
      v["E"] = ff.E;
      v["F"] = ff.F;
      v["G"] = ff.G;
      if (!ff.timelike()) throw DegenerateMetricError("not timelike");
      v["K"] = gauss_curvature(second_form(pj, ff, tol), ff);
      const PointGeometry g = analyze_point(def, p, tol);
      v["a"] = g.cd.a;
      v["KN"] = g.cd.KN;
      v["Hnorm2"] = mink_norm2(g.cd.H);
      if (def.dim == 4 && g.frame.nu) {
        v["Delta"] = delta_and_Delta(g, pullback_gh(g)).Delta;
      } else {
        note(def.dim == 4 ? "Delta unavailable: II(Zt Zt) = 0" : "Delta unavailable: surface in R^{2 1}");
      }
    } catch (const DegenerateMetricError&) {
      note("not timelike");
    } catch (const FrameError&) {
      note("no canonical null direction");
    } catch (const Error& ex) {
      note(std::string("evaluation failed: ") + ex.what());
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6e,%.6e", p.x + 0.0, p.y + 0.0);
    std::string row = buf;
    for (const auto& f : fields) {
      auto it = v.find(f);
      if (it == v.end() || !std::isfinite(it->second)) {
        row += ",nan";
      } else {
        std::snprintf(buf, sizeof buf, ",%.6e", it->second + 0.0);
        row += buf;
      }
    }
    std::string joined;
    for (const auto& n : notes) {
      if (!joined.empty()) joined += "; ";
      for (char c : n) joined += (c == ',' || c == '"' || c == '\n') ? ' ' : c;
    }
    rows[i] = row + "," + joined + "\n";
  });

  std::string out = "x,y";
  for (const auto& f : fields) out += "," + f;
  out += ",note\n";
  for (const auto& r : rows) out += r;
  return out;
}

}  // namespace nullgeo
