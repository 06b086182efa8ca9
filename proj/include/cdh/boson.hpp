// boson.hpp — single-mode Fock-space primitives: displacement-operator
// matrix elements, orthonormal Hermite functions, Gauss–Hermite quadrature,
// and the momentum-integral route to polaron-rotated operator blocks.

#pragma once

#include <vector>

#include "cdh/operators.hpp"

namespace cdh::boson {

/// ⟨s|D(α)|r⟩ for D(α) = exp(α(a† − a)), α real.
///
/// Uses the associated-Laguerre closed form with the factorial ratio taken in
/// log space, so indices up to a few hundred are safe. Symmetry:
/// element(s, r, α) == element(r, s, −α).
double displacement_element(int s, int r, double alpha);

/// Orthonormal Hermite function φ_n(x) = H_n(x) e^{−x²/2} / sqrt(√π 2ⁿ n!).
double hermite_function(int n, double x);

/// φ_0(x) .. φ_{n_max}(x) in one recurrence pass.
std::vector<double> hermite_functions(int n_max, double x);

/// Normalized Hermite polynomials ψ_n(x) = φ_n(x) e^{+x²/2}, i.e. without the
/// Gaussian. These are what a Gauss–Hermite rule integrates against.
std::vector<double> hermite_polynomials_normalized(int n_max, double x);

/// Nodes/weights for ∫ f(x) e^{−x²} dx ≈ Σ w_q f(x_q).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Golub–Welsch: eigenvalues of the Hermite Jacobi matrix are the nodes; the
/// squared first eigenvector components times √π are the weights. Nodes are
/// returned ascending and exactly symmetric about 0.
QuadratureRule gauss_hermite(int order);

/// Default order for rotations involving Fock indices below `levels`.
inline int default_quadrature_order(int levels) { return 2 * levels + 16; }

struct QuadratureBlock {
  ComplexMatrix block;
  /// max-norm difference against the same block at order + 8.
  double refinement_delta = 0.0;

  bool converged(double tolerance = 1e-9) const { return refinement_delta <= tolerance; }
};

/// (s, r) block of Û_P (O ⊗ 1) Û_P† evaluated as a momentum integral,
/// Û_P(p) = exp(−i√2 ε p S). The (−i)^n phases of the momentum-space Hermite
/// functions are carried as the overall i^{s−r} factor, which makes the result
/// identical to the spectral-decomposition route.
QuadratureBlock polaron_block_by_quadrature(const HermitianOperator& system_op, const HermitianOperator& coupling_op,
                                            double epsilon, int s, int r, const QuadratureRule& rule);

/// exp(α(a† − a)) with the generator truncated to `levels` Fock states.
///
/// This is the displacement operator as it exists on a finite cavity space:
/// unitary there, and converging entrywise to displacement_element as the
/// truncation grows. Evaluated through the spectral decomposition of the
/// (real symmetric, tridiagonal) truncated position matrix.
class TruncatedDisplacement {
 public:
  explicit TruncatedDisplacement(int levels);

  int levels() const noexcept { return levels_; }

  /// [exp(α G_levels)]_{s r}; requires s, r < levels.
  double element(int s, int r, double alpha) const;

  /// Full levels × levels matrix.
  Eigen::MatrixXd matrix(double alpha) const;

 private:
  int levels_;
  Eigen::VectorXd positions_;  // eigenvalues t_j of T, T_{n,n+1} = √(n+1)
  Eigen::MatrixXd modes_;      // orthonormal eigenvectors V(n, j)
};

}  // namespace cdh::boson
