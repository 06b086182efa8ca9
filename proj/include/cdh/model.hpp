// model.hpp — physical model parameters and the truncation knobs.
//
// Units: ħ = k_B = 1. Ω sets the energy scale; the figures in the docs use
// Δ = 1, Ω = 2.

#pragma once

#include <array>
#include <variant>

#include "cdh/operators.hpp"

namespace cdh {

/// Single spin: H = Δσz + Ω a†a + λ σx (a + a†).
struct RabiModel {
  double delta = 1.0;
  double omega = 2.0;
  double lambda = 0.0;
};

/// Spin chain coupled collectively to one mode:
/// H = Σᵢ Δσᵢz + Σ_bonds Σ_α γ_α σᵢ^α σᵢ₊₁^α + Ω a†a + (λ/√L) Σᵢσᵢx (a + a†).
struct DickeHeisenbergModel {
  double delta = 1.0;
  double omega = 2.0;
  double lambda = 0.0;
  std::array<double, 3> gamma{0.0, 0.0, 0.0};  // (γ_x, γ_y, γ_z)
  ChainGeometry geometry{};
};

using ModelSpec = std::variant<RabiModel, DickeHeisenbergModel>;

/// Throws std::invalid_argument on Ω ≤ 0, λ < 0, non-finite parameters, or
/// a chain shorter than two sites with non-zero two-body couplings.
void validate(const ModelSpec& model);

bool is_chain(const ModelSpec& model);
double delta_of(const ModelSpec& model);
double omega_of(const ModelSpec& model);
double lambda_of(const ModelSpec& model);
/// Number of sites; 0 for the Rabi model.
int chain_length(const ModelSpec& model);

/// Coupling strength multiplying S(a + a†): λ (Rabi) or λ/√L (chain).
double effective_coupling(const ModelSpec& model);
/// ε = effective_coupling / Ω.
double epsilon(const ModelSpec& model);
/// Δ̃ = Δ e^{−2ε²}.
double dressed_delta(const ModelSpec& model);

/// Dimension of the matter Hilbert space: 2 or 2^L.
Eigen::Index system_dim(const ModelSpec& model);
/// Matter part H_S of the Hamiltonian (no cavity).
HermitianOperator system_hamiltonian(const ModelSpec& model);
/// Operator S coupled to the field quadrature: σx or Σᵢσᵢx.
HermitianOperator coupling_operator(const ModelSpec& model);

/// Return a copy with λ and Δ replaced (grid sweeps work in units of Ω).
ModelSpec with_point(const ModelSpec& model, double lambda, double delta);

struct Truncation {
  int cdh_levels = 4;       // M
  int rotation_levels = 4;  // M_P
  int bare_levels = 60;     // N

  /// Throws std::invalid_argument unless M_P ≥ M ≥ 1 and N ≥ 1.
  void validate() const;
};

}  // namespace cdh
