#include "cdh/boson.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cdh/linalg.hpp"

namespace cdh::boson {

namespace {

// L_n^{(k)}(x) by the forward recurrence in n.
double associated_laguerre(int n, int k, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + k - x;
  for (int m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0 + k - x) * cur - (m + k) * prev) / (m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double displacement_element(int s, int r, double alpha) {
  if (s < 0 || r < 0) throw std::domain_error("displacement_element: negative Fock index");
  if (!std::isfinite(alpha)) throw std::domain_error("displacement_element: non-finite displacement");
  const int n = std::min(s, r);
  const int k = std::abs(s - r);
  if (alpha == 0.0) return k == 0 ? 1.0 : 0.0;
  // s >= r carries α^k, s < r carries (−α)^k.
  const double base = s >= r ? alpha : -alpha;
  const double sign = (base < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
  const double x = alpha * alpha;
  const double log_mag =
      0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + k + 1.0)) + k * std::log(std::abs(alpha)) - 0.5 * x;
  return sign * std::exp(log_mag) * associated_laguerre(n, k, x);
}

std::vector<double> hermite_polynomials_normalized(int n_max, double x) {
  if (n_max < 0) return {};
  std::vector<double> psi(static_cast<std::size_t>(n_max) + 1);
  psi[0] = std::pow(std::numbers::pi, -0.25);
  if (n_max >= 1) psi[1] = std::numbers::sqrt2 * x * psi[0];
  for (int n = 1; n < n_max; ++n) {
    psi[n + 1] = std::sqrt(2.0 / (n + 1)) * x * psi[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * psi[n - 1];
  }
  return psi;
}

std::vector<double> hermite_functions(int n_max, double x) {
  if (n_max < 0) return {};
  // Run the recurrence on the Gaussian-weighted seed so large |x| underflows
  // gracefully instead of overflowing the polynomial part.
  std::vector<double> phi(static_cast<std::size_t>(n_max) + 1);
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n_max >= 1) phi[1] = std::numbers::sqrt2 * x * phi[0];
  for (int n = 1; n < n_max; ++n) {
    phi[n + 1] = std::sqrt(2.0 / (n + 1)) * x * phi[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * phi[n - 1];
  }
  return phi;
}

double hermite_function(int n, double x) {
  if (n < 0) throw std::domain_error("hermite_function: negative order");
  return hermite_functions(n, x)[static_cast<std::size_t>(n)];
}

QuadratureRule gauss_hermite(int order) {
  if (order < 1) throw std::domain_error("gauss_hermite: order must be positive");
  RealVector diag = RealVector::Zero(order);
  RealVector off(order - 1);
  for (int n = 1; n < order; ++n) off(n - 1) = std::sqrt(0.5 * n);
  const linalg::RealEigen eig = linalg::tridiagonal_eigen(diag, off);

  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int j = 0; j < order; ++j) {
    rule.nodes[j] = eig.values(j);
    rule.weights[j] = sqrt_pi * eig.vectors(0, j) * eig.vectors(0, j);
  }
  // Enforce the exact mirror symmetry the rule has in exact arithmetic.
  for (int j = 0; j < order / 2; ++j) {
    const int m = order - 1 - j;
    const double x = 0.5 * (rule.nodes[m] - rule.nodes[j]);
    const double w = 0.5 * (rule.weights[m] + rule.weights[j]);
    rule.nodes[j] = -x;
    rule.nodes[m] = x;
    rule.weights[j] = w;
    rule.weights[m] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

namespace {

ComplexMatrix quadrature_block(const ComplexMatrix& op_eig, const RealVector& couplings, const ComplexMatrix& basis,
                               double epsilon, int s, int r, const QuadratureRule& rule) {
  const Eigen::Index d = op_eig.rows();
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  const int n_max = std::max(s, r);
  ComplexVector phase(d);
  for (int q = 0; q < rule.order(); ++q) {
    const double x = rule.nodes[q];
    const std::vector<double> psi = hermite_polynomials_normalized(n_max, x);
    const double w = rule.weights[q] * psi[s] * psi[r];
    if (w == 0.0) continue;
    for (Eigen::Index k = 0; k < d; ++k) phase(k) = std::polar(1.0, -std::numbers::sqrt2 * epsilon * x * couplings(k));
    acc += w * (phase.asDiagonal() * op_eig * phase.conjugate().asDiagonal());
  }
  // i^{s−r}
  static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex prefactor = kPowers[((s - r) % 4 + 4) % 4];
  return prefactor * (basis * acc * basis.adjoint());
}

}  // namespace

QuadratureBlock polaron_block_by_quadrature(const HermitianOperator& system_op, const HermitianOperator& coupling_op,
                                            double epsilon, int s, int r, const QuadratureRule& rule) {
  if (s < 0 || r < 0) throw std::domain_error("polaron_block_by_quadrature: negative Fock index");
  if (system_op.dim() != coupling_op.dim()) {
    throw ValidationError("polaron_block_by_quadrature: operator dimensions differ");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(coupling_op.matrix());
  const ComplexMatrix& basis = eig.eigenvectors();
  const ComplexMatrix op_eig = basis.adjoint() * system_op.matrix() * basis;

  QuadratureBlock out;
  out.block = quadrature_block(op_eig, eig.eigenvalues(), basis, epsilon, s, r, rule);
  const ComplexMatrix refined =
      quadrature_block(op_eig, eig.eigenvalues(), basis, epsilon, s, r, gauss_hermite(rule.order() + 8));
  out.refinement_delta = max_norm(refined - out.block);
  return out;
}

TruncatedDisplacement::TruncatedDisplacement(int levels) : levels_(levels) {
  if (levels < 1) throw std::domain_error("TruncatedDisplacement: need at least one level");
  RealVector diag = RealVector::Zero(levels);
  RealVector off(levels - 1);
  for (int n = 0; n + 1 < levels; ++n) off(n) = std::sqrt(n + 1.0);
  linalg::RealEigen eig = linalg::tridiagonal_eigen(diag, off);
  positions_ = std::move(eig.values);
  modes_ = std::move(eig.vectors);
}

// With S = diag(iⁿ), S (a† − a) S⁻¹ = iT for the real symmetric T above, so
// exp(αG)_{sr} = i^{r−s} Σ_j V_sj V_rj e^{iα t_j}, which is real.
double TruncatedDisplacement::element(int s, int r, double alpha) const {
  if (s < 0 || r < 0 || s >= levels_ || r >= levels_) {
    throw std::out_of_range("TruncatedDisplacement: Fock index outside the truncated space");
  }
  double c = 0.0;
  double sn = 0.0;
  for (int j = 0; j < levels_; ++j) {
    const double v = modes_(s, j) * modes_(r, j);
    c += v * std::cos(alpha * positions_(j));
    sn += v * std::sin(alpha * positions_(j));
  }
  switch (((r - s) % 4 + 4) % 4) {
    case 0: return c;
    case 1: return -sn;
    case 2: return -c;
    default: return sn;
  }
}

Eigen::MatrixXd TruncatedDisplacement::matrix(double alpha) const {
  Eigen::MatrixXd out(levels_, levels_);
  for (int s = 0; s < levels_; ++s) {
    for (int r = 0; r < levels_; ++r) out(s, r) = element(s, r, alpha);
  }
  return out;
}

}  // namespace cdh::boson
