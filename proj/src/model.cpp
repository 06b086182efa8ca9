#include "cdh/model.hpp"

#include <cmath>
#include <stdexcept>

namespace cdh {

namespace {

template <class F>
decltype(auto) visit_common(const ModelSpec& model, F&& f) {
  return std::visit([&](const auto& m) { return f(m); }, model);
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void validate(const ModelSpec& model) {
  visit_common(model, [](const auto& m) {
    require(std::isfinite(m.delta) && std::isfinite(m.omega) && std::isfinite(m.lambda),
            "model parameters must be finite");
    require(m.omega > 0.0, "omega must be positive");
    require(m.lambda >= 0.0, "lambda must be non-negative");
    return 0;
  });
  if (const auto* dh = std::get_if<DickeHeisenbergModel>(&model)) {
    for (double g : dh->gamma) require(std::isfinite(g), "gamma must be finite");
    require(dh->geometry.length >= 1, "chain length must be positive");
    require(dh->geometry.length <= 12, "chain length above 12 is outside the dense-storage budget");
    const bool two_body = dh->gamma[0] != 0.0 || dh->gamma[1] != 0.0 || dh->gamma[2] != 0.0;
    require(!two_body || dh->geometry.length >= 2, "two-body couplings need at least two sites");
  }
}

bool is_chain(const ModelSpec& model) { return std::holds_alternative<DickeHeisenbergModel>(model); }

double delta_of(const ModelSpec& model) {
  return visit_common(model, [](const auto& m) { return m.delta; });
}

double omega_of(const ModelSpec& model) {
  return visit_common(model, [](const auto& m) { return m.omega; });
}

double lambda_of(const ModelSpec& model) {
  return visit_common(model, [](const auto& m) { return m.lambda; });
}

int chain_length(const ModelSpec& model) {
  if (const auto* dh = std::get_if<DickeHeisenbergModel>(&model)) return dh->geometry.length;
  return 0;
}

double effective_coupling(const ModelSpec& model) {
  const int L = chain_length(model);
  return L == 0 ? lambda_of(model) : lambda_of(model) / std::sqrt(static_cast<double>(L));
}

double epsilon(const ModelSpec& model) { return effective_coupling(model) / omega_of(model); }

double dressed_delta(const ModelSpec& model) {
  const double eps = epsilon(model);
  return delta_of(model) * std::exp(-2.0 * eps * eps);
}

Eigen::Index system_dim(const ModelSpec& model) {
  const int L = chain_length(model);
  return L == 0 ? 2 : Eigen::Index{1} << L;
}

HermitianOperator system_hamiltonian(const ModelSpec& model) {
  if (const auto* rabi = std::get_if<RabiModel>(&model)) return rabi->delta * ops::pauli(Axis::z);
  const auto& dh = std::get<DickeHeisenbergModel>(model);
  ComplexMatrix h = dh.delta * ops::collective(Axis::z, dh.geometry).matrix();
  const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
  for (int a = 0; a < 3; ++a) {
    if (dh.gamma[a] == 0.0) continue;
    h += dh.gamma[a] * ops::bond_sum(axes[a], dh.geometry).matrix();
  }
  return HermitianOperator::hermitized(h);
}

HermitianOperator coupling_operator(const ModelSpec& model) {
  if (std::holds_alternative<RabiModel>(model)) return ops::pauli(Axis::x);
  return ops::collective(Axis::x, std::get<DickeHeisenbergModel>(model).geometry);
}

ModelSpec with_point(const ModelSpec& model, double lambda, double delta) {
  ModelSpec out = model;
  std::visit(
      [&](auto& m) {
        m.lambda = lambda;
        m.delta = delta;
      },
      out);
  return out;
}

void Truncation::validate() const {
  require(cdh_levels >= 1, "cdh_levels (M) must be at least 1");
  require(rotation_levels >= cdh_levels, "rotation_levels (M_P) must be at least cdh_levels (M)");
  require(bare_levels >= 1, "bare_levels (N) must be at least 1");
}

}  // namespace cdh
