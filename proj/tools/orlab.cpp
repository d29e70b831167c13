// orlab: command-line front end. Every subcommand builds a Scenario, so a
// flag run and the equivalent --scenario file produce the same report.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "orlab/errors.hpp"
#include "orlab/functions.hpp"
#include "orlab/scenario.hpp"

namespace {

const char* kGrowthHelp =
    "growth families (every one takes a scale c, default 1):\n"
    "  power:p=P[,c=C]            c t^p; an N-function iff p > 1\n"
    "  powerlog:p=P[,beta=B,c=C]  c t^p ln(1+t)^B, beta defaults to 1\n"
    "  qoverlog:q=Q[,c=C]         c t^q / ln(e+t), q > 1\n"
    "  explike[:c=C]              c (e^t - 1 - t)\n"
    "  tlog[:c=C]                 c t ln(1+t); not nabla_2\n"
    "  sampled:file=PATH[,c=C]    knot table of ln t, ln Phi\n";

struct Common {
  std::string scenario;
  std::string phi, phi2, fn, g;
  double L = 0;
  std::size_t N = 0;
  std::string json_out = "orlab_report.json";
  std::string csv_out, svg_out;
  std::vector<std::pair<std::string, double>> tol;
  bool quiet = false;
};

void add_common(CLI::App* app, Common& c, bool growth, bool fn) {
  app->add_option("--scenario", c.scenario, "JSON scenario file; flags given on the command line override it");
  if (growth) app->add_option("--phi", c.phi, "growth function spec");
  if (fn) {
    app->add_option("--fn", c.fn, "boundary function spec");
    app->add_option("--L", c.L, "grid half-width");
    app->add_option("--N", c.N, "grid node count");
  }
  app->add_option("--json", c.json_out, "report path (empty to skip)");
  app->add_flag("--quiet", c.quiet, "suppress the summary table");
}

orlab::Scenario base(const Common& c, const std::string& command) {
  orlab::Scenario s = c.scenario.empty() ? orlab::Scenario{} : orlab::load_scenario(c.scenario);
  if (c.scenario.empty()) {
    s.command = command;
    s.heights = orlab::HeightLattice::dyadic().heights;
    if (command == "verify:cayley") s.heights = orlab::HeightLattice::dyadic(8, -5).heights;
  } else if (s.command != command) {
    throw orlab::Error(orlab::ErrorKind::InvalidArgument,
                       "scenario command '" + s.command + "' does not match subcommand '" + command + "'");
  }
  if (!c.phi.empty()) s.phi = c.phi;
  if (!c.phi2.empty()) s.phi2 = c.phi2;
  if (!c.fn.empty()) s.fn = c.fn;
  if (!c.g.empty()) s.g = c.g;
  if (c.L > 0) s.grid.L = c.L;
  if (c.N > 0) s.grid.N = c.N;
  for (const auto& [k, v] : c.tol) s.tolerances[k] = v;
  s.json_out = c.json_out;
  if (!c.csv_out.empty()) s.csv_out = c.csv_out;
  if (!c.svg_out.empty()) s.svg_out = c.svg_out;
  s.grid.validate();
  return s;
}

int finish(const orlab::RunOutcome& r, bool quiet) {
  if (!quiet || r.exit_code == 1) std::cout << r.summary;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {

  CLI::App app{"orlab: Orlicz-Hardy spaces on the upper half-plane"};
  app.footer(std::string(kGrowthHelp) + "\n" + orlab::function_families_help() +
             "\nexit codes: 0 all checks pass, 2 a check failed, 1 error\n");
  app.require_subcommand(1);

  Common c;
  std::string verify_name, report_path, method = "spectral", eps, kind, op, beta, suite;
  std::vector<double> at, radii;
  double alpha = 0, lambda = 0;
  int terms = 0;
  std::size_t angles = 0;
  bool no_analytic = false;

  auto* growth = app.add_subcommand("growth", "growth function diagnostics");
  growth->require_subcommand(1);
  auto* gcheck = growth->add_subcommand("check", "indices, Delta_2, nabla_2 and optional comparison with --phi2");
  add_common(gcheck, c, true, false);
  gcheck->add_option("--phi2", c.phi2, "second growth function for domination and equivalence");

  auto* norm = app.add_subcommand("norm", "Luxemburg norm");
  add_common(norm, c, true, true);
  auto* dual = app.add_subcommand("dual-norm", "Orlicz dual norm");
  add_common(dual, c, true, true);

  auto* extend = app.add_subcommand("extend", "extend a boundary function to the half-plane");
  add_common(extend, c, true, true);
  extend->add_option("--kind", kind, "poisson, conjugate or cauchy");
  extend->add_option("--csv", c.csv_out, "field CSV (y,x,re,im)");
  extend->add_option("--svg", c.svg_out, "slice norm plot");

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert transform");
  add_common(hilbert, c, false, true);
  hilbert->add_option("--method", method, "spectral or pv");
  hilbert->add_option("--eps", eps, "pv truncation schedule in grid steps, e.g. 8h,4h,2h");
  hilbert->add_option("--at", at, "evaluation points");
  hilbert->add_option("--csv", c.csv_out, "output CSV (x,re,im)");
  hilbert->add_option("--svg", c.svg_out, "plot");

  auto* maximal = app.add_subcommand("maximal", "maximal operators");
  add_common(maximal, c, false, true);
  maximal->add_option("--op", op, "hl, dyadic, rad, ntg, hilbert or stopping");
  maximal->add_option("--beta", beta, "dyadic shift: 0 or 1/3");
  maximal->add_option("--alpha", alpha, "cone aperture");
  maximal->add_option("--lambda", lambda, "stopping level");
  maximal->add_option("--at", at, "evaluation points");
  maximal->add_option("--csv", c.csv_out, "output CSV (x,re,im)");
  maximal->add_option("--svg", c.svg_out, "plot");

  auto* counter = app.add_subcommand("counterexample", "unbounded maximal operator construction");
  add_common(counter, c, true, false);
  counter->add_option("--phi2", c.phi2, "target growth function (defaults to --phi)");
  counter->add_option("--terms", terms, "number of blocks");
  counter->add_option("--svg", c.svg_out, "trend plot");

  auto* verify = app.add_subcommand("verify", "run a theorem verifier");
  add_common(verify, c, true, true);
  verify->add_option("name", verify_name, "poisson, measure, cauchy, riesz, maximal, duality, cayley or all")
      ->required()
      ->check(CLI::IsMember({"poisson", "measure", "cauchy", "riesz", "maximal", "duality", "cayley", "all"}));
  verify->add_option("--g", c.g, "second function (duality) or pairing partner (riesz)");
  verify->add_option("--alpha", alpha, "cone aperture");
  verify->add_option("--radii", radii, "disk radii (cayley)");
  verify->add_option("--angles", angles, "angles per circle (cayley)");
  verify->add_option("--terms", terms, "counterexample blocks for gated runs");
  verify->add_flag("--no-analytic-boundary", no_analytic, "use the input as given instead of f + iHf (cauchy)");
  verify->add_option("--tol", c.tol, "override a named tolerance: --tol name value");
  verify->add_option("--suite", suite, "scenario directory for 'all'");

  auto* report = app.add_subcommand("report", "print the summary of a saved report");
  report->add_option("path", report_path, "report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*report) {
      std::ifstream in(report_path);
      if (!in) throw orlab::Error(orlab::ErrorKind::IoError, "cannot open '" + report_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      std::cout << orlab::summarize_report_json(ss.str());
      return 0;
    }
    orlab::Scenario s;
    if (*gcheck) s = base(c, "growth-check");
    else if (*norm) s = base(c, "norm");
    else if (*dual) s = base(c, "dual-norm");
    else if (*extend) {
      s = base(c, "extend");
      if (!kind.empty()) s.kind = kind;
    } else if (*hilbert) {
      s = base(c, "hilbert");
      if (hilbert->count("--method")) s.method = method;
      if (!eps.empty()) s.eps = eps;
      if (!at.empty()) s.at = at;
    } else if (*maximal) {
      s = base(c, "maximal");
      if (!op.empty()) s.op = op;
      if (!beta.empty()) s.beta = beta;
      if (alpha > 0) s.alpha = alpha;
      if (lambda > 0) s.lambda = lambda;
      if (!at.empty()) s.at = at;
    } else if (*counter) {
      s = base(c, "counterexample");
      if (terms > 0) s.terms = terms;
    } else {
      s = base(c, "verify:" + verify_name);
      if (alpha > 0) s.alpha = alpha;
      if (!radii.empty()) s.radii = radii;
      if (angles > 0) s.angles = angles;
      if (terms > 0) s.terms = terms;
      if (no_analytic) s.analytic_boundary = false;
      if (!suite.empty()) s.suite = suite;
    }
    const auto r = orlab::run_scenario(s);
    if (verify_name == "all" && !s.json_out.empty()) {
      std::ofstream out(s.json_out);
      out << r.report_json;
    }
    return finish(r, c.quiet);
  } catch (const orlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
