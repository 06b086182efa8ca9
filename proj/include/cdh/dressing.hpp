// dressing.hpp — the polaron block kernel.
//
// For Û_P = Σ_k P_k ⊗ D(ε s_k), with {s_k, P_k} the spectral decomposition
// of the coupling operator S, the (s, r) cavity block of Û_P (O ⊗ 1) Û_P† is
//
//   B_sr = V (X ∘ F_sr) V†,   X = V† O V,   (F_sr)_{kk'} = ⟨s|D(ε(s_k − s_k'))|r⟩.
//
// This is the data-parallel hot spot of the library. `polaron_blocks` runs it
// with OpenMP over block pairs; `polaron_blocks_serial` is the plain reference
// used by the tests and the benchmark.

#pragma once

#include <functional>
#include <memory>

#include "cdh/boson.hpp"
#include "cdh/model.hpp"
#include "cdh/operators.hpp"

namespace cdh {

/// Eigenbasis of the coupling operator.
struct CouplingSpectrum {
  RealVector eigenvalues;  // s_k
  ComplexMatrix basis;     // V, columns are |k⟩

  static CouplingSpectrum from_operator(const HermitianOperator& coupling);

  /// Σᵢσᵢx on L sites in the product σx basis: V is the L-fold Hadamard
  /// product and s_k is an integer in {−L, …, L}, both exact.
  static CouplingSpectrum collective_sigma_x(int length);
};

/// Coupling spectrum for a model: σx for Rabi, the exact Hadamard basis for
/// chains.
CouplingSpectrum coupling_spectrum(const ModelSpec& model);

/// ⟨s|D(α)|r⟩ as seen by the kernel. Must be safe to call concurrently.
using DisplacementFactor = std::function<double(int s, int r, double alpha)>;

/// Exact Fock-space displacement elements.
DisplacementFactor exact_displacement();

/// Displacement with the generator truncated to `levels` Fock states.
DisplacementFactor truncated_displacement(int levels);

/// All M × M blocks of Û_P (O ⊗ 1) Û_P†, laid out as an (M·d) × (M·d) matrix
/// with cavity index outermost. Only s ≤ r is evaluated; the lower triangle
/// is the block adjoint.
ComplexMatrix polaron_blocks(const HermitianOperator& op, const CouplingSpectrum& spectrum, double epsilon,
                             int levels, const DisplacementFactor& factor);

ComplexMatrix polaron_blocks_serial(const HermitianOperator& op, const CouplingSpectrum& spectrum, double epsilon,
                                    int levels, const DisplacementFactor& factor);

/// One (s, r) block, same definition.
ComplexMatrix polaron_block(const HermitianOperator& op, const CouplingSpectrum& spectrum, double epsilon, int s,
                            int r, const DisplacementFactor& factor);

}  // namespace cdh
