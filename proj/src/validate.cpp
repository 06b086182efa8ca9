#include "cdh/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "cdh/builders.hpp"
#include "cdh/observables.hpp"
#include "json.hpp"

namespace cdh::cli {

namespace {

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
  return CheckResult{std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

double cross_builder_rabi(const ValidationOptions& o) {
  double worst = 0.0;
  for (double lo : {0.0, 0.5, 1.0, 1.5, 2.5}) {
    for (double dO : {0.1, 0.25, 0.5, 1.0, 2.0}) {
      const RabiModel m{dO * o.omega, o.omega, lo * o.omega};
      ComplexMatrix closed = build_cdh_rabi_closed_form(4, m).matrix();
      closed(0, 0) += o.perturb;
      worst = std::max(worst, max_norm(closed - build_cdh_generic(ModelSpec{m}, 4).matrix()));
    }
  }
  return worst;
}

double cross_builder_dicke(const ValidationOptions& o) {
  double worst = 0.0;
  const std::vector<double> couplings = o.quick ? std::vector<double>{0.0, 0.6, 2.0}
                                                : std::vector<double>{0.0, 0.3, 0.6, 1.0, 2.0};
  const std::vector<double> splittings = o.quick ? std::vector<double>{0.25, 1.0}
                                                 : std::vector<double>{0.1, 0.25, 0.5, 1.0, 2.0};
  for (double lo : couplings) {
    for (double dO : splittings) {
      DickeHeisenbergModel m;
      m.omega = o.omega;
      m.delta = dO * o.omega;
      m.lambda = lo * o.omega;
      m.gamma = {o.omega / 8, o.omega / 8 + 0.1, -0.05};
      m.geometry.length = o.quick ? 2 : 4;
      worst = std::max(worst, max_norm(build_cdh_dicke_heisenberg_closed_form(3, m).matrix() -
                                       build_cdh_generic(ModelSpec{m}, 3).matrix()));
    }
  }
  return worst;
}

double route_equivalence(const ValidationOptions& o) {
  const HermitianOperator sz = ops::pauli(Axis::z);
  const HermitianOperator sx = ops::pauli(Axis::x);
  const CouplingSpectrum spec = CouplingSpectrum::from_operator(sx);
  const boson::QuadratureRule rule = boson::gauss_hermite(boson::default_quadrature_order(4));
  double worst = 0.0;
  for (double eps : {0.1, 0.5, 1.0}) {
    const ComplexMatrix blocks = polaron_blocks(sz, spec, eps, 4, exact_displacement());
    for (int s = 0; s < 4; ++s) {
      for (int r = 0; r < 4; ++r) {
        const auto q = boson::polaron_block_by_quadrature(sz, sx, eps, s, r, rule);
        worst = std::max(worst, max_norm(q.block - blocks.block(2 * s, 2 * r, 2, 2)));
      }
    }
  }
  (void)o;
  return worst;
}

double decoupled_blocks(const ValidationOptions& o) {
  DickeHeisenbergModel m;
  m.omega = o.omega;
  m.delta = o.delta;
  m.gamma = {0.3, -0.2, 0.1};
  m.geometry.length = 3;
  const HermitianOperator h = build_cdh_generic(ModelSpec{m}, 3);
  const ComplexMatrix hs = system_hamiltonian(ModelSpec{m}).matrix();
  const Eigen::Index d = hs.rows();
  ComplexMatrix expected = ComplexMatrix::Zero(3 * d, 3 * d);
  for (int k = 0; k < 3; ++k) {
    expected.block(k * d, k * d, d, d) = hs + k * o.omega * ComplexMatrix::Identity(d, d);
  }
  return max_norm(h.matrix() - expected);
}

double dressing_identity() {
  double worst = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const DressingValues d = dressing_values(0.01 * i);
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(d.f[k] + d.g[k] - 1.0));
  }
  return worst;
}

double rotation_identity() {
  const CouplingSpectrum spec = CouplingSpectrum::collective_sigma_x(3);
  const HermitianOperator id = ops::identity(8);
  double worst = 0.0;
  for (double eps : {0.2, 1.3}) {
    for (int mp : {3, 7}) {
      const RotatedObservable r = rotate_observable(id, spec, eps, 3, mp);
      worst = std::max(worst, max_norm(r.op.matrix() - ComplexMatrix::Identity(24, 24)));
    }
  }
  return worst;
}

double m2_closed_form(const ValidationOptions& o) {
  double worst = 0.0;
  for (double lo : {0.0, 0.3, 1.0, 2.5}) {
    const RabiModel m{o.delta, o.omega, lo * o.omega};
    const auto analytic = rabi_m2_eigenvalues(m);
    const RealVector numeric = eigenvalues_only(build_cdh_rabi_closed_form(2, m));
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(analytic[i] - numeric(i)));
  }
  return worst;
}

double rabi_deep_strong_offdiagonal(const ValidationOptions& o) {
  const RabiModel m{o.delta, o.omega, 5.0 * o.omega};
  const ComplexMatrix h = build_cdh_generic(ModelSpec{m}, 4).matrix();
  double worst = 0.0;
  for (int s = 0; s < 4; ++s) {
    for (int r = 0; r < 4; ++r) {
      if (s != r) worst = std::max(worst, max_norm(h.block(2 * s, 2 * r, 2, 2)));
    }
  }
  return worst;
}

double ground_energy(const HermitianOperator& h) { return eigenvalues_only(h)(0); }

// Max over λ/Δ ∈ [0, 5] of |E₀^cdh(M) − E₀^bare(60)| for M = 1..4, resonant.
std::vector<double> ground_errors(const ValidationOptions& o, int points) {
  const double delta = o.delta;
  const double omega = 2.0 * delta;
  std::vector<double> worst(4, 0.0);
  for (int i = 0; i < points; ++i) {
    const double lambda = 5.0 * delta * i / (points - 1);
    const ModelSpec m = RabiModel{delta, omega, lambda};
    const double ref = ground_energy(build_bare(m, 60));
    for (int k = 1; k <= 4; ++k) {
      worst[k - 1] = std::max(worst[k - 1], std::abs(ground_energy(build_cdh_generic(m, k)) - ref));
    }
  }
  return worst;
}

double bare_self_convergence(const ValidationOptions& o) {
  double worst = 0.0;
  for (double ld : {0.0, 1.0, 2.5, 5.0}) {
    const ModelSpec m = RabiModel{o.delta, 2.0 * o.delta, ld * o.delta};
    const RealVector a = eigenvalues_only(build_bare(m, 60));
    const RealVector b = eigenvalues_only(build_bare(m, 80));
    for (int nu = 0; nu < 3; ++nu) worst = std::max(worst, std::abs(a(nu) - b(nu)));
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& o) {
  std::vector<CheckResult> out;
  auto guarded = [&](const std::string& name, double threshold, const std::function<double()>& f) {
    try {
      out.push_back(at_most(name, f(), threshold));
    } catch (const std::exception& e) {
      out.push_back(CheckResult{name, std::numeric_limits<double>::quiet_NaN(), threshold, false, e.what()});
    }
  };

  guarded("cross_builder_rabi_m4", 1e-10, [&] { return cross_builder_rabi(o); });
  guarded("cross_builder_dicke_heisenberg_m3", 1e-10, [&] { return cross_builder_dicke(o); });
  guarded("route_equivalence_quadrature_vs_spectral", 1e-10, [&] { return route_equivalence(o); });
  guarded("zero_coupling_block_structure", 1e-12, [&] { return decoupled_blocks(o); });
  guarded("dressing_f_plus_g", 1e-14, [] { return dressing_identity(); });
  guarded("rotation_of_identity", 1e-12, [] { return rotation_identity(); });
  guarded("rabi_m2_closed_form_eigenvalues", 1e-12, [&] { return m2_closed_form(o); });
  guarded("rabi_deep_strong_offdiagonal_norm", 1e-16, [&] { return rabi_deep_strong_offdiagonal(o); });

  if (!o.quick) {
    guarded("bare_oracle_self_convergence_n60_vs_n80", 1e-10, [&] { return bare_self_convergence(o); });
    try {
      const std::vector<double> e = ground_errors(o, 26);
      double worst_step = -std::numeric_limits<double>::infinity();
      std::ostringstream detail;
      detail << "max ground-state error for M=1..4:";
      for (std::size_t k = 0; k < e.size(); ++k) {
        detail << ' ' << e[k];
        if (k > 0) worst_step = std::max(worst_step, e[k] - e[k - 1]);
      }
      CheckResult c{"ground_error_strictly_decreasing_in_m", worst_step, 0.0, worst_step < 0.0, detail.str()};
      out.push_back(c);
    } catch (const std::exception& e) {
      out.push_back(CheckResult{"ground_error_strictly_decreasing_in_m", std::numeric_limits<double>::quiet_NaN(),
                                0.0, false, e.what()});
    }
  }
  return out;
}

std::string validation_report_json(const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json report;
  bool all = true;
  report["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["measured"] = std::isfinite(c.measured) ? nlohmann::ordered_json(c.measured) : nlohmann::ordered_json("NaN");
    j["threshold"] = c.threshold;
    j["passed"] = c.passed;
    if (!c.detail.empty()) j["detail"] = c.detail;
    report["checks"].push_back(j);
  }
  report["passed"] = all;
  return report.dump(2);
}

}  // namespace cdh::cli
