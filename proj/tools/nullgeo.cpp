// nullgeo: catalog listing, identity checks and curvature scans.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nullgeo/catalog.hpp"
#include "nullgeo/check.hpp"
#include "nullgeo/error.hpp"

namespace {

using namespace nullgeo;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

CatalogEntry resolve_surface(const std::string& spec) {
  if (const CatalogEntry* e = find_entry(spec)) return *e;
  if (std::filesystem::is_regular_file(spec)) return make_user_entry(load_surface_file(spec));
  throw UsageError("unknown surface '" + spec + "' (not a catalog id or a readable file)");
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> split_fields(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void print_summary(const CheckReport& r) {
  int failed = 0;
  for (const auto& rec : r.records) {
    if (rec.pass) continue;
    ++failed;
    std::fprintf(stderr, "FAIL %-32s value %.6g tol %.3g%s\n", rec.name.c_str(), rec.value, rec.tolerance,
                 rec.expected_fail ? " (declared failure did not fail)" : "");
  }
  std::fprintf(stderr, "%s: %zu records, %d failed, %d/%d points skipped%s -> %s\n", r.id.c_str(), r.records.size(),
               failed, r.skipped_points, r.points, r.expected_fail ? " [expected-fail]" : "", r.pass ? "PASS" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timelike surfaces with a canonical null direction: identity checks and scans"};
  app.require_subcommand(1);

  auto* catalog = app.add_subcommand("catalog", "Built-in surfaces");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List catalog ids");
  std::string export_id, export_out;
  auto* exp = catalog->add_subcommand("export", "Write a catalog entry as surface JSON");
  exp->add_option("id", export_id, "Catalog id")->required();
  exp->add_option("--out", export_out, "Output path (default stdout)");

  std::string surface, grid_text = "11x11", out_path, fields_text;
  CheckOptions opt;
  bool no_richardson = false;

  auto* check = app.add_subcommand("check", "Run every applicable identity check on a grid");
  auto* scan = app.add_subcommand("scan", "Sample curvature fields on a grid as CSV");
  for (auto* sub : {check, scan}) {
    sub->add_option("--surface", surface, "Catalog id or surface JSON path")->required();
    sub->add_option("--grid", grid_text, "Grid NxM")->capture_default_str();
    sub->add_option("--out", out_path, "Output path (default stdout)");
  }
  check->add_option("--tol", opt.tol.first_fd, "Tolerance for first-FD identities")->capture_default_str();
  check->add_option("--tol2", opt.tol.second_fd, "Tolerance for second-FD identities")->capture_default_str();
  check->set_help_flag("--help", "Print this help message and exit");
  check->add_option("--h", opt.fd.h, "FD step")->capture_default_str();
  check->add_flag("--no-richardson", no_richardson, "Plain central differences");
  scan->add_option("--fields", fields_text, "Comma-separated subset of E,F,G,K,a,KN,Hnorm2,Delta")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (list->parsed()) {
      for (const auto& e : builtin_catalog())
        std::printf("%-30s %-22s%s\n", e.id.c_str(), to_string(e.family), e.expected_fail() ? " [expected-fail]" : "");
      return kPass;
    }
    if (exp->parsed()) {
      const CatalogEntry* e = find_entry(export_id);
      if (!e) throw UsageError("unknown catalog id '" + export_id + "'");
      write_output(surface_to_json(e->def) + "\n", export_out);
      return kPass;
    }
    const GridSpec grid = parse_grid(grid_text);
    const CatalogEntry entry = resolve_surface(surface);
    if (check->parsed()) {
      if (opt.fd.h <= 0.0) throw UsageError("--h must be positive");
      opt.grid = grid;
      opt.fd.richardson = !no_richardson;
      const CheckReport report = run_check(entry, opt);
      write_output(report_to_json(report), out_path);
      print_summary(report);
      return report.pass ? kPass : kFail;
    }
    if (scan->parsed()) {
      write_output(scan_csv(entry.def, grid, split_fields(fields_text)), out_path);
      return kPass;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const LoadError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  }
  return kUsage;
}
