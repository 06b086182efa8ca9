#include "doctest.h"

#include "cdh/config.hpp"

using namespace cdh;
using namespace cdh::cli;

TEST_CASE("minimal Rabi config") {
  const RunConfig c = parse_config(R"({"observables": [{"energy_levels": 4}]})");
  CHECK(std::holds_alternative<RabiModel>(c.model));
  REQUIRE(c.observables.size() == 4);
  CHECK(c.observables[3].name() == "E3");
  CHECK(!c.grid.has_value());
  const SweepGrid g = c.effective_grid();
  CHECK(g.size() == 1);
  CHECK(g.delta_over_omega.values()[0] == 0.5);
}

TEST_CASE("full chain config") {
  const RunConfig c = parse_config(R"({
    "model": {"type": "dicke_heisenberg", "delta": 1, "omega": 2, "gamma": [0.25, 0.25, 0], "length": 4},
    "truncation": {"M": 3, "N": 40},
    "representation": "both",
    "grid": {"lambda_over_omega": {"min": 0, "max": 1, "steps": 5}, "delta_over_omega": 0.5},
    "observables": ["mz", "entropy", "structure_x", {"sigma_z_thermal": 1.0}],
    "output": "out.csv"
  })");
  const auto& m = std::get<DickeHeisenbergModel>(c.model);
  CHECK(m.geometry.length == 4);
  CHECK(m.gamma[0] == 0.25);
  CHECK(c.representation == Representation::both);
  CHECK(c.grid->size() == 5);
  const auto lam = c.grid->lambda_over_omega.values();
  CHECK(lam[1] == 0.25);
  CHECK(lam.back() == 1.0);
  CHECK(c.observables[3].name() == "sigma_z_thermal(T=1)");
  CHECK(c.output_path == "out.csv");
  // M_P policy: ground-state magnetization gets at least 20 levels, the rest M.
  CHECK(c.rotation_levels_for(c.observables[0]) == 20);
  CHECK(c.rotation_levels_for(c.observables[2]) == 3);
  CHECK(c.rotation_levels_for(c.observables[3]) == 3);

  const RunConfig explicit_mp = parse_config(R"({"truncation": {"M": 3, "M_P": 7}, "observables": ["mz"]})");
  CHECK(explicit_mp.rotation_levels_for(explicit_mp.observables[0]) == 7);
}

TEST_CASE("config errors") {
  const char* bad[] = {
      R"({"observables": []})",
      R"({})",
      R"(not json)",
      R"([1, 2])",
      R"({"observables": ["entropy"]})",
      R"({"observables": ["structure_z"]})",
      R"({"observables": ["mz", "mz"]})",
      R"({"observables": ["magic"]})",
      R"({"observables": [{"sigma_z_thermal": 0}]})",
      R"({"observables": [{"energy_levels": 0}]})",
      R"({"truncation": {"M": 2}, "observables": [{"energy_levels": 5}]})",
      R"({"truncation": {"M": 4, "M_P": 2}, "observables": ["mz"]})",
      R"({"truncation": {"M": 0}, "observables": ["mz"]})",
      R"({"model": {"type": "spin_boson"}, "observables": ["mz"]})",
      R"({"model": {"omega": -1}, "observables": ["mz"]})",
      R"({"model": {"lambda": -1}, "observables": ["mz"]})",
      R"({"model": {"gamma": [1, 1, 1]}, "observables": ["mz"]})",
      R"({"model": {"type": "dicke_heisenberg", "length": 3}, "observables": ["entropy"]})",
      R"({"model": {"type": "dicke_heisenberg", "gamma": [1, 1]}, "observables": ["mz"]})",
      R"({"model": {"type": "dicke_heisenberg", "length": 20}, "observables": ["mz"]})",
      R"({"grid": {"lambda_over_omega": {"min": 1, "max": 0, "steps": 3}}, "observables": ["mz"]})",
      R"({"grid": {"lambda_over_omega": {"min": 0, "max": 1, "steps": 1}}, "observables": ["mz"]})",
      R"({"grid": {"lambda_over_omega": {"min": -1, "max": 1, "steps": 3}}, "observables": ["mz"]})",
      R"({"grid": {"kappa": 1}, "observables": ["mz"]})",
      R"({"representation": "polaron", "observables": ["mz"]})",
      R"({"observables": ["mz"], "colour": "blue"})",
      R"({"observables": ["mz"], "record_timings": 1})",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
}

TEST_CASE("error messages name the field") {
  try {
    parse_config(R"({"truncation": {"M": "three"}, "observables": ["mz"]})");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("truncation.M") != std::string::npos);
  }
}

TEST_CASE("observables are optional for validation") {
  CHECK_NOTHROW(parse_config(R"({"model": {"delta": 0.5}})", false));
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}
