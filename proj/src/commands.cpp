#include "cdh/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "cdh/config.hpp"
#include "cdh/linalg.hpp"
#include "cdh/sweep.hpp"
#include "cdh/validate.hpp"
#include "json.hpp"

namespace cdh::cli {

namespace {

// Writes to the requested file, or to `fallback` when no path is set.
bool emit(const std::string& path, std::ostream& fallback, std::ostream& err,
          const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return true;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open output file '" << path << "'\n";
    return false;
  }
  write(file);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

std::string output_path(const CommandOptions& options, const RunConfig& config) {
  return options.out_path.empty() ? config.output_path : options.out_path;
}

// Shared front matter: load config, report config errors uniformly.
template <class Body>
int with_config(const CommandOptions& options, std::ostream& err, Body&& body) {
  linalg::use_single_threaded_blas();
  RunConfig config;
  try {
    if (options.config_path.empty()) throw ConfigError("--config is required");
    config = load_config(options.config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    return body(config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int report_failures(const std::vector<std::string>& failures, std::ostream& err) {
  if (failures.empty()) return kSuccess;
  for (const auto& f : failures) err << "point failed: " << f << '\n';
  err << failures.size() << " point(s) failed; values recorded as NaN\n";
  return kNumericalFailure;
}

}  // namespace

int cmd_spectrum(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return with_config(options, err, [&](RunConfig config) {
    std::vector<ObservableRequest> energies;
    for (const auto& r : config.observables) {
      if (r.kind == ObservableRequest::Kind::energy) energies.push_back(r);
    }
    if (energies.empty()) throw ConfigError("spectrum needs an {\"energy_levels\": k} observable");
    config.observables = energies;
    SweepResult result = run_sweep(config, options.workers);

    // In `both` mode append |E_cdh − E_bare| per level as representation
    // "abs_error"; rows come in (cdh block, bare block) pairs per point.
    if (config.representation == Representation::both) {
      const std::size_t k = energies.size();
      std::vector<SweepRow> rows;
      for (std::size_t p = 0; p + 2 * k <= result.rows.size(); p += 2 * k) {
        for (std::size_t i = 0; i < 2 * k; ++i) rows.push_back(result.rows[p + i]);
        for (std::size_t i = 0; i < k; ++i) {
          SweepRow row = result.rows[p + i];
          row.representation = "abs_error";
          row.value = std::abs(result.rows[p + i].value - result.rows[p + k + i].value);
          row.wall_time_ms = 0.0;
          rows.push_back(row);
        }
      }
      result.rows = std::move(rows);
    }
    if (!emit(output_path(options, config), out, err, [&](std::ostream& o) { write_csv(o, result.rows); })) {
      return static_cast<int>(kNumericalFailure);
    }
    return report_failures(result.failures, err);
  });
}

int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return with_config(options, err, [&](const RunConfig& config) {
    if (!config.grid) throw ConfigError("sweep needs a \"grid\"");
    const SweepResult result = run_sweep(config, options.workers);
    if (!emit(output_path(options, config), out, err, [&](std::ostream& o) { write_csv(o, result.rows); })) {
      return static_cast<int>(kNumericalFailure);
    }
    return report_failures(result.failures, err);
  });
}

int cmd_observable(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return with_config(options, err, [&](const RunConfig& config) {
    if (config.grid && config.grid->size() != 1) throw ConfigError("observable needs no grid or a 1x1 grid");
    const SweepResult result = run_sweep_serial(config);

    nlohmann::ordered_json doc;
    const SweepGrid grid = config.effective_grid();
    doc["lambda_over_omega"] = grid.lambda_over_omega.min;
    doc["delta_over_omega"] = grid.delta_over_omega.min;
    doc["model"] = is_chain(config.model) ? "dicke_heisenberg" : "rabi";
    doc["L"] = chain_length(config.model);
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    for (const SweepRow& row : result.rows) {
      auto& rep = results[row.representation];
      if (rep.is_null()) {
        rep["M_or_N"] = row.m_or_n;
        rep["wall_time_ms"] = row.wall_time_ms;
        rep["values"] = nlohmann::ordered_json::object();
        rep["M_P"] = nlohmann::ordered_json::object();
      }
      rep["values"][row.observable] =
          std::isfinite(row.value) ? nlohmann::ordered_json(row.value) : nlohmann::ordered_json("NaN");
      rep["M_P"][row.observable] = row.m_p;
    }
    doc["results"] = results;
    if (!result.failures.empty()) doc["failures"] = result.failures;
    if (!emit(output_path(options, config), out, err, [&](std::ostream& o) { o << doc.dump(2) << '\n'; })) {
      return static_cast<int>(kNumericalFailure);
    }
    return report_failures(result.failures, err);
  });
}

int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  linalg::use_single_threaded_blas();
  ValidationOptions vo;
  vo.quick = options.quick;
  vo.perturb = options.perturb;
  std::string path = options.out_path;
  if (!options.config_path.empty()) {
    try {
      const RunConfig config = load_config(options.config_path, false);
      vo.delta = delta_of(config.model);
      vo.omega = omega_of(config.model);
      if (path.empty()) path = config.output_path;
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << '\n';
      return kConfigError;
    }
  }
  std::vector<CheckResult> checks;
  try {
    checks = run_validation(vo);
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  const std::string report = validation_report_json(checks);
  if (!emit(path, out, err, [&](std::ostream& o) { o << report << '\n'; })) return kNumericalFailure;
  bool ok = true;
  for (const auto& c : checks) {
    if (!c.passed) {
      ok = false;
      err << "check failed: " << c.name << " measured " << c.measured << " threshold " << c.threshold << '\n';
    }
  }
  return ok ? kSuccess : kValidationFailure;
}

}  // namespace cdh::cli
