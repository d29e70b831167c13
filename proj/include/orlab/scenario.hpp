#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlab/grid.hpp"
#include "orlab/verifier.hpp"

namespace orlab {

/// A fully resolved run request. Every default is filled in by the loader so
/// the report echo shows exactly what ran.
struct Scenario {
  std::string command;  // growth-check, norm, dual-norm, extend, hilbert, maximal, counterexample, verify:<name>
  std::string description;
  std::string phi = "power:p=2";
  std::string phi2;
  std::string fn = "gauss:s=1";
  std::string g;  // second function (duality, pairing partner)
  std::vector<std::pair<double, double>> atoms;
  std::string density;
  std::vector<std::string> testfns;
  GridSpec grid{};
  std::vector<double> heights;
  std::string method = "spectral";
  std::string eps = "8h,4h,2h";
  std::string kind = "poisson";  // extend: poisson, conjugate, cauchy
  std::string op = "hl";         // maximal: hl, dyadic, rad, ntg, hilbert, stopping
  double alpha = 1;
  std::string beta = "0";
  std::vector<double> at;
  double lambda = 1;
  int terms = 3;
  std::vector<double> radii{0, 0.5, 0.9};
  std::size_t angles = 1024;
  bool analytic_boundary = true;
  std::map<std::string, double> tolerances;  // overrides only
  std::string json_out;
  std::string csv_out;
  std::string svg_out;
  unsigned seed = 0;
  std::string expect = "pass";  // bundled suites: pass or fail
  std::string suite;            // verify:all directory, empty for the bundled one
};

/// Reads a JSON scenario. ParseError carries the line (and column) of a
/// syntax error; UnknownKey names the key and its line.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin = "<scenario>");

/// Canonical JSON with every default materialized.
std::string scenario_to_json(const Scenario& s);

struct RunOutcome {
  int exit_code = 0;       // 0 all checks pass, 2 a check failed, 1 operational error
  std::string report_json;  // always produced
  std::string summary;      // human-readable table
};

/// Dispatches a scenario. Errors surfacing from the modules become exit 1
/// with a structured error object; GateFailed in verify:riesz and
/// verify:maximal runs the degenerate demonstration and counts as a failed check.
RunOutcome run_scenario(const Scenario& s);

/// Runs every *.json scenario in dir, in file-name order, and compares each
/// outcome with its expect field. Exit 0 iff all match.
RunOutcome run_suite(const std::string& dir);

/// Human-readable table for a saved report.
std::string summarize_report_json(const std::string& json_text);

VerifyConfig verify_config(const Scenario& s);

}  // namespace orlab
