#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "cdh/commands.hpp"
#include "json.hpp"

using namespace cdh::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("cdh_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(int (*cmd)(const CommandOptions&, std::ostream&, std::ostream&), CommandOptions o) {
  std::ostringstream out, err;
  const int code = cmd(o, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int shell(const std::string& args) {
  const int status = std::system((std::string(CDH_BINARY) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("spectrum command") {
  TempDir tmp;
  const std::string cfg =
      tmp.write("c.json", R"({"truncation": {"M": 2}, "grid": {"lambda_over_omega": 0}, "observables": [{"energy_levels": 4}]})");
  const Run r = run(cmd_spectrum, {cfg, "", 1, false, 0.0});
  CHECK(r.code == kSuccess);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line ==
        "lambda_over_omega,delta_over_omega,representation,M_or_N,M_P,L,gamma_x,gamma_y,gamma_z,observable,value,"
        "wall_time_ms");
  std::getline(lines, line);
  CHECK(line.rfind("0,0.5,cdh,2,0,0,0,0,0,E0,", 0) == 0);
  CHECK(std::stod(line.substr(25)) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(line.substr(line.size() - 2) == ",0");

  SUBCASE("both mode adds the deviation rows") {
    const std::string both = tmp.write(
        "b.json",
        R"({"truncation": {"M": 4, "N": 60}, "representation": "both", "grid": {"lambda_over_omega": {"min": 0, "max": 2.5, "steps": 3}},
            "observables": [{"energy_levels": 3}]})");
    const std::string out = (tmp.path / "s.csv").string();
    const Run rb = run(cmd_spectrum, {both, out, 2, false, 0.0});
    CHECK(rb.code == kSuccess);
    const std::string csv = slurp(out);
    std::size_t rows = 0, deviations = 0;
    for (std::size_t p = csv.find('\n'); p != std::string::npos && p + 1 < csv.size(); p = csv.find('\n', p + 1)) ++rows;
    for (std::size_t p = csv.find("abs_error"); p != std::string::npos; p = csv.find("abs_error", p + 1)) ++deviations;
    CHECK(rows == 3 * 3 * 3);
    CHECK(deviations == 9);
  }
  SUBCASE("spectrum without energies is a config error") {
    const std::string no_e = tmp.write("n.json", R"({"observables": ["mz"]})");
    CHECK(run(cmd_spectrum, {no_e, "", 1, false, 0.0}).code == kConfigError);
  }
}

TEST_CASE("sweep command") {
  TempDir tmp;
  const std::string cfg = tmp.write("c.json", R"({
    "model": {"type": "dicke_heisenberg", "gamma": [0.25, 0.25, 0], "length": 4},
    "truncation": {"M": 3},
    "grid": {"lambda_over_omega": {"min": 0, "max": 1, "steps": 4}, "delta_over_omega": {"min": 0.1, "max": 0.5, "steps": 3}},
    "observables": ["mz", "entropy", "structure_x"]})");
  const std::string a = (tmp.path / "a.csv").string();
  const std::string b = (tmp.path / "b.csv").string();
  const std::string c = (tmp.path / "c.csv").string();
  CHECK(run(cmd_sweep, {cfg, a, 1, false, 0.0}).code == kSuccess);
  CHECK(run(cmd_sweep, {cfg, b, 8, false, 0.0}).code == kSuccess);
  CHECK(run(cmd_sweep, {cfg, c, 8, false, 0.0}).code == kSuccess);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(b) == slurp(c));
  CHECK(slurp(a).find("NaN") == std::string::npos);

  const std::string no_grid = tmp.write("g.json", R"({"observables": ["mz"]})");
  CHECK(run(cmd_sweep, {no_grid, "", 1, false, 0.0}).code == kConfigError);
  CHECK(run(cmd_sweep, {(tmp.path / "missing.json").string(), "", 1, false, 0.0}).code == kConfigError);
  CHECK(run(cmd_sweep, {cfg, (tmp.path / "no/such/dir.csv").string(), 1, false, 0.0}).code == kNumericalFailure);
}

TEST_CASE("observable command") {
  TempDir tmp;
  const std::string cfg = tmp.write("c.json", R"({"model": {"lambda": 0}, "truncation": {"M": 4, "N": 20},
      "representation": "both", "observables": [{"sigma_z_thermal": 1}, "mz"]})");
  const Run r = run(cmd_observable, {cfg, "", 1, false, 0.0});
  REQUIRE(r.code == kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["model"] == "rabi");
  CHECK(doc["results"]["cdh"]["values"]["sigma_z_thermal(T=1)"].get<double>() ==
        doctest::Approx(-std::tanh(1.0)).epsilon(1e-10));
  CHECK(doc["results"]["bare"]["values"]["mz"].get<double>() == doctest::Approx(-1.0));
  CHECK(doc["results"]["cdh"]["M_P"]["mz"] == 20);

  const std::string grid =
      tmp.write("g.json", R"({"grid": {"lambda_over_omega": {"min": 0, "max": 1, "steps": 2}}, "observables": ["mz"]})");
  CHECK(run(cmd_observable, {grid, "", 1, false, 0.0}).code == kConfigError);
  const std::string rabi_entropy = tmp.write("e.json", R"({"observables": ["entropy"]})");
  CHECK(run(cmd_observable, {rabi_entropy, "", 1, false, 0.0}).code == kConfigError);
}

TEST_CASE("validate command") {
  const Run quick = run(cmd_validate, {"", "", 0, true, 0.0});
  CHECK(quick.code == kSuccess);
  const auto doc = nlohmann::json::parse(quick.out);
  CHECK(doc["passed"] == true);
  CHECK(doc["checks"].size() >= 6);

  const Run faulty = run(cmd_validate, {"", "", 0, true, 1e-3});
  CHECK(faulty.code == kValidationFailure);
  CHECK(faulty.err.find("cross_builder_rabi_m4") != std::string::npos);

  TempDir tmp;
  const std::string bad = tmp.write("b.json", R"({"model": {"omega": 0}})");
  CHECK(run(cmd_validate, {bad, "", 0, true, 0.0}).code == kConfigError);
}

TEST_CASE("binary exit codes") {
  TempDir tmp;
  const std::string empty = tmp.write("e.json", R"({"observables": []})");
  const std::string good = tmp.write("g.json", R"({"grid": {"lambda_over_omega": 0.5}, "observables": ["mz"]})");
  CHECK(shell("sweep --config " + empty) == 1);
  CHECK(shell("sweep") == 1);
  CHECK(shell("frobnicate --config " + good) == 1);
  CHECK(shell("sweep --config " + good + " --workers 2") == 0);
  CHECK(shell("validate --quick") == 0);
  CHECK(shell("validate --quick --perturb 1e-3") == 3);
}
