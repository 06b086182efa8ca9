// observables.hpp — diagonalization, equilibrium states, and the
// rotate-then-truncate observable mapping.
//
// Observables are reported in the lab frame: a matter operator O is mapped to
// the leading M × M cavity blocks of Û_P (O ⊗ 1) Û_P†, with the rotation
// carried out on M_P ≥ M cavity levels.

#pragma once

#include "cdh/dressing.hpp"
#include "cdh/model.hpp"

namespace cdh {

struct Spectrum {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns
};

Spectrum eigensolve(const HermitianOperator& h);
RealVector eigenvalues_only(const HermitianOperator& h);

/// max_ν ‖H v_ν − E_ν v_ν‖₂ / ‖H‖₂ (‖H‖₂ = max |E|).
double relative_residual(const HermitianOperator& h, const Spectrum& spectrum);

/// A mapped observable together with the rotation dimension it was built at.
struct RotatedObservable {
  HermitianOperator op;
  int built_at;
};

/// Rotation with the displacement generator truncated to M_P levels; keeps the
/// leading M blocks. Requires M_P ≥ M ≥ 1.
RotatedObservable rotate_observable(const HermitianOperator& op, const CouplingSpectrum& coupling, double epsilon,
                                    int levels, int rotation_levels);
RotatedObservable rotate_observable(const HermitianOperator& op, const HermitianOperator& coupling, double epsilon,
                                    int levels, int rotation_levels);

/// Rotation with exact (untruncated) displacement elements: the M_P → ∞ limit.
RotatedObservable rotate_observable_exact(const HermitianOperator& op, const CouplingSpectrum& coupling,
                                          double epsilon, int levels);

/// O ⊗ 1_M without rotation: the polaron-frame expectation, for debugging.
RotatedObservable unrotated_observable(const HermitianOperator& op, int levels);

/// Equilibrium state as a weighted set of eigenvectors, ρ = Σ w_i |v_i⟩⟨v_i|.
class EquilibriumState {
 public:
  /// Equal-weight mixture over eigenvectors within `degeneracy_tol` of E₀.
  /// A negative tolerance selects the default 1e-9 · max|E|.
  static EquilibriumState ground(const Spectrum& spectrum, double degeneracy_tol = -1.0);

  /// Gibbs state at temperature T > 0 (k_B = 1); weights from shifted
  /// energies e^{−(E−E₀)/T}.
  static EquilibriumState thermal(const Spectrum& spectrum, double temperature);

  /// Tr(ρ O); the imaginary residue is checked (1e-10) and discarded.
  double expectation(const ComplexMatrix& op) const;
  double expectation(const RotatedObservable& obs) const { return expectation(obs.op.matrix()); }

  ComplexMatrix density_matrix() const;

  const RealVector& weights() const noexcept { return weights_; }
  const ComplexMatrix& vectors() const noexcept { return vectors_; }
  Eigen::Index dim() const noexcept { return vectors_.rows(); }

 private:
  EquilibriumState(RealVector weights, ComplexMatrix vectors) : weights_(std::move(weights)), vectors_(std::move(vectors)) {}

  RealVector weights_;
  ComplexMatrix vectors_;  // one column per weight
};

double thermal_expectation(const HermitianOperator& h_cdh, const RotatedObservable& obs, double temperature);
double ground_state_expectation(const HermitianOperator& h_cdh, const RotatedObservable& obs,
                                double degeneracy_tol = -1.0);

/// (1/L) Σᵢ ⟨σᵢz⟩ in the lab frame. `state` lives on M·2^L.
double magnetization_z(const EquilibriumState& state, const DickeHeisenbergModel& model, int levels,
                       int rotation_levels);

/// (1/L²) Σᵢⱼ ⟨σᵢ^α σⱼ^α⟩ in the lab frame.
double structure_factor(const EquilibriumState& state, const DickeHeisenbergModel& model, int levels,
                        int rotation_levels, Axis axis);

/// Von Neumann entropy (nats) of the first L/2 sites, with the cavity traced
/// out alongside the second half. Evaluated on the CDH eigenvectors.
double entanglement_entropy(const EquilibriumState& state, const DickeHeisenbergModel& model, int levels);

/// −Tr ρ ln ρ for a Hermitian PSD matrix; eigenvalues in [−1e-10, 0) are
/// clamped to zero, anything more negative is a ValidationError.
double von_neumann_entropy(const ComplexMatrix& rho);

}  // namespace cdh
