// config.hpp — JSON run configuration for the command-line front end.
//
// {
//   "model": {"type": "rabi" | "dicke_heisenberg", "delta": 1, "omega": 2,
//             "lambda": 0, "gamma": [gx, gy, gz], "length": 4, "periodic": true},
//   "truncation": {"M": 3, "M_P": 20, "N": 40},          // M_P optional
//   "representation": "cdh" | "bare" | "both",
//   "grid": {"lambda_over_omega": {"min": 0, "max": 1, "steps": 50},
//            "delta_over_omega": 0.5},                   // number = one point
//   "observables": ["mz", "entropy", "structure_x", {"energy_levels": 4},
//                   {"sigma_z_thermal": 1.0}],
//   "output": "out.csv",
//   "record_timings": false
// }

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdh/model.hpp"

namespace cdh::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Representation { cdh, bare, both };

const char* representation_name(Representation rep);

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  /// min + i (max − min)/(steps − 1); a single point for steps == 1.
  std::vector<double> values() const;
};

struct SweepGrid {
  GridAxis lambda_over_omega;
  GridAxis delta_over_omega;

  std::size_t size() const {
    return static_cast<std::size_t>(lambda_over_omega.steps) * static_cast<std::size_t>(delta_over_omega.steps);
  }
};

/// One requested quantity. `energy_levels k` is expanded at parse time into k
/// separate energy requests.
struct ObservableRequest {
  enum class Kind { energy, mz, sigma_z_thermal, structure, entropy };

  Kind kind = Kind::mz;
  int level = 0;             // energy
  Axis axis = Axis::z;       // structure
  double temperature = 0.0;  // sigma_z_thermal

  /// Stable column value: "E0", "mz", "sigma_z_thermal(T=1)", "structure_x",
  /// "entropy".
  std::string name() const;
  bool uses_ground_state() const { return kind != Kind::sigma_z_thermal && kind != Kind::energy; }
};

struct RunConfig {
  ModelSpec model = RabiModel{};
  Truncation truncation{};
  bool rotation_levels_explicit = false;
  Representation representation = Representation::cdh;
  std::optional<SweepGrid> grid;
  std::vector<ObservableRequest> observables;
  std::string output_path;
  bool record_timings = false;

  /// M_P for one observable: the explicit value if given, else max(M, 20) for
  /// ground-state magnetization and M otherwise.
  int rotation_levels_for(const ObservableRequest& request) const;

  /// Grid in use: the configured one, or the single point (λ/Ω, Δ/Ω) of the
  /// model parameters.
  SweepGrid effective_grid() const;
};

/// Parse and validate. Throws ConfigError with a field path on any problem.
/// `validate` only reads the model, so it may skip the observable list.
RunConfig parse_config(const std::string& json_text, bool require_observables = true);
RunConfig load_config(const std::string& path, bool require_observables = true);

}  // namespace cdh::cli
