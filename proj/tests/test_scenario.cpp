#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "orlab/errors.hpp"
#include "orlab/scenario.hpp"

using namespace orlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(ORLAB_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp(const std::string& name) { return (fs::temp_directory_path() / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ScenarioLoad, MinimalFileGetsDefaults) {
  const auto s = parse_scenario(R"({"command": "norm", "phi": "power:p=2", "fn": "gauss:s=1"})");
  EXPECT_EQ(s.grid.L, 256.0);
  EXPECT_EQ(s.grid.N, 32768u);
  ASSERT_EQ(s.heights.size(), 9u);
  EXPECT_EQ(s.heights.front(), 1.0);
  EXPECT_EQ(s.heights.back(), 1.0 / 256);
  const auto echo = nlohmann::json::parse(scenario_to_json(s));
  EXPECT_EQ(echo["grid"]["N"], 32768);
  EXPECT_EQ(echo["tolerances"]["isometry"], 1e-2);
}

TEST(ScenarioLoad, CayleyDefaultsReachAboveTheDisk) {
  const auto s = parse_scenario(R"({"command": "verify:cayley"})");
  EXPECT_EQ(s.heights.front(), 32.0);
}

TEST(ScenarioLoad, UnknownKeyNamesKeyAndLine) {
  try {
    parse_scenario("{\"command\": \"norm\",\n  \"gird\": {\"L\": 3}}", "s.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownKey);
    EXPECT_NE(std::string(e.what()).find("gird"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("s.json:2"), std::string::npos);
  }
}

TEST(ScenarioLoad, SyntaxErrorCarriesLine) {
  try {
    parse_scenario("{\"command\": \"norm\",\n\"phi\": ,}", "s.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("s.json:2"), std::string::npos);
  }
}

TEST(ScenarioLoad, WrongTypeNamesField) {
  try {
    parse_scenario(R"({"command": "norm", "alpha": "wide"})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
}

TEST(ScenarioLoad, UnknownToleranceRejected) {
  try {
    parse_scenario(R"({"command": "verify:poisson", "tolerances": {"isometri": 0.1}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownKey);
  }
}

TEST(ScenarioRun, TLogRieszRoutesToGate) {
  const auto s = parse_scenario(R"({"command": "verify:riesz", "phi": "tlog"})");
  const auto r = run_scenario(s);
  EXPECT_EQ(r.exit_code, 2);
  const auto j = nlohmann::json::parse(r.report_json);
  EXPECT_NE(j["result"]["gate"].get<std::string>().find("GateFailed"), std::string::npos);
}

TEST(ScenarioRun, OperationalErrorIsExitOne) {
  const auto s = parse_scenario(R"({"command": "norm", "fn": "wavelet"})");
  const auto r = run_scenario(s);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.report_json)["error"]["kind"], "ParseError");
}

TEST(ScenarioRun, ReportIsDeterministic) {
  const auto s = parse_scenario(R"({"command": "verify:poisson", "fn": "cauchy:y=1"})");
  EXPECT_EQ(run_scenario(s).report_json, run_scenario(s).report_json);
}

TEST(ScenarioRun, BundledScenariosParse) {
  int failing = 0;
  for (const auto& e : fs::directory_iterator(ORLAB_SCENARIO_DIR)) {
    const auto s = load_scenario(e.path().string());
    if (s.expect == "fail") ++failing;
  }
  EXPECT_GE(failing, 7);
}

TEST(Cli, VerifyPoissonExitsZeroWithIsometryCheck) {
  const auto out = temp("orlab_cli_poisson.json");
  const auto r = run_cli("verify poisson --phi power:p=2 --fn gauss:s=1 --json " + out);
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(slurp(out));
  bool found = false;
  for (const auto& c : j["result"]["checks"]) found = found || c["name"] == "isometry";
  EXPECT_TRUE(found);
  const auto rep = run_cli("report " + out);
  EXPECT_EQ(rep.code, 0);
  EXPECT_NE(rep.out.find("isometry"), std::string::npos);
  fs::remove(out);
}

TEST(Cli, GrowthCheckTLogReportsNablaTwoFailure) {
  const auto out = temp("orlab_cli_growth.json");
  const auto r = run_cli("growth check --phi tlog --json " + out);
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(nlohmann::json::parse(slurp(out))["result"]["nabla2"]["satisfied"].get<bool>());
  fs::remove(out);
}

TEST(Cli, MaximalRectPrintsHalf) {
  const auto r = run_cli("maximal --op hl --fn rect:a=0,b=1 --at 2.0 --json ''");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.5\n");
}

TEST(Cli, NegativeControlExitsTwo) {
  const auto r = run_cli("verify cauchy --scenario " + std::string(ORLAB_SCENARIO_DIR) +
                         "/cauchy_real_negative.json --json '' --quiet");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, BadInputsExitOne) {
  EXPECT_EQ(run_cli("norm --fn wavelet --json ''").code, 1);
  EXPECT_EQ(run_cli("verify nope").code, 1);
  EXPECT_EQ(run_cli("verify poisson --phi power:p=0.5 --json ''").code, 1);
}

TEST(Cli, HelpListsFamilies) {
  const auto r = run_cli("--help");
  EXPECT_EQ(r.code, 0);
  for (const char* fam : {"power", "powerlog", "qoverlog", "explike", "tlog", "sampled", "gauss", "cauchy", "bump",
                          "rect", "tent", "smoothrect", "csv"})
    EXPECT_NE(r.out.find(fam), std::string::npos) << fam;
}

TEST(Cli, ArtifactsWritten) {
  const auto csv = temp("orlab_cli_field.csv"), svg = temp("orlab_cli_norms.svg");
  const auto r = run_cli("extend --fn gauss:s=1 --L 16 --N 2048 --csv " + csv + " --svg " + svg + " --json ''");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(csv).substr(0, 9), "y,x,re,im");
  EXPECT_NE(slurp(svg).find("<polyline"), std::string::npos);
  fs::remove(csv);
  fs::remove(svg);
}
