// operators.hpp — dense operator algebra on spin chains (Pauli matrices,
// Kronecker products, site embeddings, half-chain partial trace).
//
// Ordering convention used everywhere in the library: site 0 is the leftmost
// Kronecker factor; when a cavity factor is present it sits to the left of
// all sites, so a (cavity ⊗ chain) index is c * 2^L + chain_index.
// Spin basis is the σz eigenbasis with |↑⟩ = (1, 0).

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cdh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised when an input violates a documented numerical invariant
/// (Hermiticity, unit trace, dimension agreement, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTolerance = 1e-12;

/// Largest |entry| of a matrix; the norm used by all tolerance checks.
double max_norm(const ComplexMatrix& m);

/// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// (m + m†) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Square complex matrix with max-norm(H − H†) below a tolerance.
/// Construction validates; the stored matrix is never mutated afterwards.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m, double tolerance = kHermitianTolerance);

  /// Symmetrizes before validating. For builders whose output is Hermitian
  /// analytically but accumulates rounding in the anti-Hermitian part.
  static HermitianOperator hermitized(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  /// True if every imaginary part is exactly zero.
  bool is_real() const;

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double scale) const;

 private:
  ComplexMatrix m_;
};

inline HermitianOperator operator*(double scale, const HermitianOperator& op) { return op * scale; }

enum class Axis { x, y, z, identity };

Axis parse_axis(const std::string& name);
const char* axis_name(Axis axis);

struct ChainGeometry {
  int length = 2;
  bool periodic = true;

  Eigen::Index dim() const { return Eigen::Index{1} << length; }
  /// Number of nearest-neighbour bonds (L for periodic, L-1 for open).
  int bond_count() const { return periodic ? length : length - 1; }
};

namespace ops {

HermitianOperator pauli(Axis axis);
HermitianOperator identity(Eigen::Index dim);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// `op` on `site`, identity elsewhere.
HermitianOperator site_operator(const HermitianOperator& op, int site, const ChainGeometry& geometry);

/// `op_a` on site i and `op_b` on site (i + 1) mod L. The wrap bond (i = L-1)
/// is only legal on periodic chains.
HermitianOperator two_site_operator(const HermitianOperator& op_a, const HermitianOperator& op_b, int i,
                                    const ChainGeometry& geometry);

/// Σ_i σ_i^axis.
HermitianOperator collective(Axis axis, const ChainGeometry& geometry);

/// Σ_bonds σ_i^axis σ_{i+1}^axis.
HermitianOperator bond_sum(Axis axis, const ChainGeometry& geometry);

/// Reduced density matrix of the first L/2 sites. `rho` acts on
/// (cavity_levels ⊗ chain); the cavity factor is traced out with the second
/// half of the chain. Requires even L and unit trace (1e-10).
ComplexMatrix partial_trace_half_chain(const ComplexMatrix& rho, const ChainGeometry& geometry,
                                       int cavity_levels = 1);

/// Same reduction for a pure state |ψ⟩ without forming |ψ⟩⟨ψ|.
ComplexMatrix partial_trace_half_chain(const ComplexVector& psi, const ChainGeometry& geometry,
                                       int cavity_levels = 1);

}  // namespace ops
}  // namespace cdh
