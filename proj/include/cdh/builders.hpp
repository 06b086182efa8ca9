// builders.hpp — Hamiltonian construction: the bare truncated-Fock model,
// the generic cavity-dressed Hamiltonian, and closed-form transcriptions used
// as regression anchors.

#pragma once

#include <array>

#include "cdh/model.hpp"

namespace cdh {

/// Full model with the cavity truncated to N Fock levels. Dimension N·d_S,
/// cavity factor leftmost.
HermitianOperator build_bare(const ModelSpec& model, int bare_levels);

/// Polaron-rotated Hamiltonian kept on M cavity sectors:
/// (H_S)^cdh + Ω N − (λ_eff²/Ω) S², with the S² term block-diagonal because it
/// commutes with the rotation.
HermitianOperator build_cdh_generic(const ModelSpec& model, int cdh_levels);

/// Serial-kernel variant of build_cdh_generic; identical output.
HermitianOperator build_cdh_generic_serial(const ModelSpec& model, int cdh_levels);

/// Explicit four-sector Rabi matrix, leading M sectors (1 ≤ M ≤ 4).
HermitianOperator build_cdh_rabi_closed_form(int cdh_levels, const RabiModel& model);

/// Closed-form eigenvalues of the two-sector Rabi CDH, ascending.
std::array<double, 4> rabi_m2_eigenvalues(const RabiModel& model);

/// Dressing-function values at scaled coupling ε.
struct DressingValues {
  double epsilon = 0.0;
  std::array<double, 3> f{};
  std::array<double, 3> g{};
  double h = 0.0;
  double v = 0.0;
  double w = 0.0;
};

DressingValues dressing_values(double epsilon);

/// Explicit three-sector Dicke–Heisenberg matrix, leading M sectors
/// (1 ≤ M ≤ 3).
HermitianOperator build_cdh_dicke_heisenberg_closed_form(int cdh_levels, const DickeHeisenbergModel& model);

/// λ → ∞ limit of the Dicke–Heisenberg CDH. The all-to-all −(λ²/ΩL)ΣΣσxσx
/// term diverges and is reported by its coefficient instead of being added.
struct DeepStrongLimit {
  HermitianOperator finite_part;
  double all_to_all_coefficient;  // −λ²/(ΩL) at the model's λ
};

DeepStrongLimit deep_strong_limit_cdh(const DickeHeisenbergModel& model, int cdh_levels);

/// −(λ_eff²/Ω) S² ⊗ 1_M, the block-diagonal polaron shift.
HermitianOperator polaron_shift(const ModelSpec& model, int cdh_levels);

}  // namespace cdh
