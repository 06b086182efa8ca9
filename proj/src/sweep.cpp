#include "cdh/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include <omp.h>

#include "cdh/builders.hpp"
#include "cdh/observables.hpp"

namespace cdh::cli {

const char* const kCsvHeader =
    "lambda_over_omega,delta_over_omega,representation,M_or_N,M_P,L,gamma_x,gamma_y,gamma_z,observable,value,"
    "wall_time_ms";

namespace {

using Kind = ObservableRequest::Kind;

// Lab-frame operator for a request, on the matter space alone.
HermitianOperator matter_operator(const ObservableRequest& r, const ModelSpec& model) {
  if (!is_chain(model)) return ops::pauli(Axis::z);
  const ChainGeometry& geom = std::get<DickeHeisenbergModel>(model).geometry;
  const double L = geom.length;
  if (r.kind == Kind::structure) {
    const ComplexMatrix s = ops::collective(r.axis, geom).matrix();
    return HermitianOperator::hermitized(s * s / (L * L));
  }
  return (1.0 / L) * ops::collective(Axis::z, geom);
}

class PointEvaluator {
 public:
  PointEvaluator(const RunConfig& config, ModelSpec model, Representation rep)
      : config_(config), model_(std::move(model)), rep_(rep) {
    const int levels = cdh() ? config.truncation.cdh_levels : config.truncation.bare_levels;
    levels_ = levels;
    const HermitianOperator h = cdh() ? build_cdh_generic_serial(model_, levels) : build_bare(model_, levels);
    spectrum_ = eigensolve(h);
    if (relative_residual(h, spectrum_) > 1e-9) throw ValidationError("eigensolver residual exceeds 1e-9 ||H||");
  }

  double value(const ObservableRequest& r) {
    switch (r.kind) {
      case Kind::energy: return spectrum_.eigenvalues(r.level);
      case Kind::entropy: {
        const auto& dh = std::get<DickeHeisenbergModel>(model_);
        return entanglement_entropy(ground(), dh, levels_);
      }
      case Kind::sigma_z_thermal: return thermal(r.temperature).expectation(mapped(r));
      case Kind::mz:
      case Kind::structure: return ground().expectation(mapped(r));
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

  int rotation_levels(const ObservableRequest& r) const {
    if (!cdh() || r.kind == Kind::energy || r.kind == Kind::entropy) return 0;
    return config_.rotation_levels_for(r);
  }

 private:
  bool cdh() const { return rep_ == Representation::cdh; }

  const EquilibriumState& ground() {
    if (!ground_) ground_ = EquilibriumState::ground(spectrum_);
    return *ground_;
  }

  const EquilibriumState& thermal(double t) {
    auto it = thermal_.find(t);
    if (it == thermal_.end()) it = thermal_.emplace(t, EquilibriumState::thermal(spectrum_, t)).first;
    return it->second;
  }

  ComplexMatrix mapped(const ObservableRequest& r) {
    const HermitianOperator op = matter_operator(r, model_);
    if (!cdh()) return ops::kron(ComplexMatrix::Identity(levels_, levels_), op.matrix());
    return rotate_observable(op, coupling_spectrum(model_), epsilon(model_), levels_, rotation_levels(r))
        .op.matrix();
  }

  const RunConfig& config_;
  ModelSpec model_;
  Representation rep_;
  int levels_ = 0;
  Spectrum spectrum_;
  std::optional<EquilibriumState> ground_;
  std::map<double, EquilibriumState> thermal_;
};

SweepRow row_template(const RunConfig& config, double lo, double dO, Representation rep) {
  SweepRow row;
  row.lambda_over_omega = lo;
  row.delta_over_omega = dO;
  row.representation = representation_name(rep);
  row.m_or_n = rep == Representation::cdh ? config.truncation.cdh_levels : config.truncation.bare_levels;
  if (const auto* dh = std::get_if<DickeHeisenbergModel>(&config.model)) {
    row.length = dh->geometry.length;
    row.gamma_x = dh->gamma[0];
    row.gamma_y = dh->gamma[1];
    row.gamma_z = dh->gamma[2];
  }
  return row;
}

std::vector<Representation> representations(Representation rep) {
  if (rep == Representation::both) return {Representation::cdh, Representation::bare};
  return {rep};
}

struct Task {
  double lambda_over_omega;
  double delta_over_omega;
  Representation rep;
};

std::vector<Task> tasks_for(const RunConfig& config) {
  const SweepGrid grid = config.effective_grid();
  std::vector<Task> tasks;
  for (double lo : grid.lambda_over_omega.values()) {
    for (double dO : grid.delta_over_omega.values()) {
      for (Representation rep : representations(config.representation)) tasks.push_back({lo, dO, rep});
    }
  }
  return tasks;
}

SweepResult collect(std::vector<PointResult>& results) {
  // Tasks are generated in output order, so concatenation is the sort.
  SweepResult out;
  for (auto& r : results) {
    if (!r.error.empty()) out.failures.push_back(std::move(r.error));
    for (auto& row : r.rows) out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

PointResult evaluate_point(const RunConfig& config, double lambda_over_omega, double delta_over_omega,
                           Representation rep) {
  if (rep == Representation::both) throw std::invalid_argument("evaluate_point: pick cdh or bare");
  const auto start = std::chrono::steady_clock::now();
  const double om = omega_of(config.model);
  const SweepRow base = row_template(config, lambda_over_omega, delta_over_omega, rep);

  PointResult result;
  std::vector<double> values(config.observables.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<int> mp(config.observables.size(), 0);
  try {
    const ModelSpec model = with_point(config.model, lambda_over_omega * om, delta_over_omega * om);
    PointEvaluator eval(config, model, rep);
    for (std::size_t i = 0; i < config.observables.size(); ++i) {
      mp[i] = eval.rotation_levels(config.observables[i]);
      values[i] = eval.value(config.observables[i]);
      if (!std::isfinite(values[i])) throw ValidationError(config.observables[i].name() + " is not finite");
    }
  } catch (const std::exception& e) {
    std::fill(values.begin(), values.end(), std::numeric_limits<double>::quiet_NaN());
    char where[96];
    std::snprintf(where, sizeof where, "lambda/omega=%.17g delta/omega=%.17g %s: ", lambda_over_omega,
                  delta_over_omega, representation_name(rep));
    result.error = where + std::string(e.what());
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  for (std::size_t i = 0; i < config.observables.size(); ++i) {
    SweepRow row = base;
    row.m_p = mp[i];
    row.observable = config.observables[i].name();
    row.value = values[i];
    row.wall_time_ms = config.record_timings ? elapsed : 0.0;
    result.rows.push_back(std::move(row));
  }
  return result;
}

SweepResult run_sweep(const RunConfig& config, int workers) {
  const std::vector<Task> tasks = tasks_for(config);
  std::vector<PointResult> results(tasks.size());
  const int n = static_cast<int>(tasks.size());
  if (workers < 1) workers = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (int i = 0; i < n; ++i) {
    const Task& t = tasks[static_cast<std::size_t>(i)];
    results[static_cast<std::size_t>(i)] = evaluate_point(config, t.lambda_over_omega, t.delta_over_omega, t.rep);
  }
  return collect(results);
}

SweepResult run_sweep_serial(const RunConfig& config) {
  const std::vector<Task> tasks = tasks_for(config);
  std::vector<PointResult> results;
  results.reserve(tasks.size());
  for (const Task& t : tasks) results.push_back(evaluate_point(config, t.lambda_over_omega, t.delta_over_omega, t.rep));
  return collect(results);
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "NaN";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_double(r.lambda_over_omega) << ',' << format_double(r.delta_over_omega) << ',' << r.representation
        << ',' << r.m_or_n << ',' << r.m_p << ',' << r.length << ',' << format_double(r.gamma_x) << ','
        << format_double(r.gamma_y) << ',' << format_double(r.gamma_z) << ',' << r.observable << ','
        << format_double(r.value) << ',' << format_double(r.wall_time_ms) << '\n';
  }
}

}  // namespace cdh::cli
