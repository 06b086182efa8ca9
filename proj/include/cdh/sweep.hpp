// sweep.hpp — grid evaluation and CSV emission.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cdh/config.hpp"

namespace cdh::cli {

struct SweepRow {
  double lambda_over_omega = 0.0;
  double delta_over_omega = 0.0;
  std::string representation;
  int m_or_n = 0;
  int m_p = 0;  // 0 for bare rows
  int length = 0;
  double gamma_x = 0.0;
  double gamma_y = 0.0;
  double gamma_z = 0.0;
  std::string observable;
  double value = 0.0;  // NaN marks a failed point
  double wall_time_ms = 0.0;
};

extern const char* const kCsvHeader;

/// Every requested observable at one (λ/Ω, Δ/Ω) point in one representation
/// (cdh or bare, not both). A numerical failure yields NaN values and a
/// message in `error`.
struct PointResult {
  std::vector<SweepRow> rows;
  std::string error;
};

PointResult evaluate_point(const RunConfig& config, double lambda_over_omega, double delta_over_omega,
                           Representation rep);

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted: λ, Δ, representation, request order
  std::vector<std::string> failures;
};

/// Grid points dispatched over `workers` OpenMP threads; each point is
/// evaluated single-threaded so results do not depend on the schedule.
SweepResult run_sweep(const RunConfig& config, int workers);
/// Straight loop over the same points.
SweepResult run_sweep_serial(const RunConfig& config);

/// Header plus one line per row, doubles with 17 significant digits, "NaN"
/// for non-finite values.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::string format_double(double x);

}  // namespace cdh::cli
