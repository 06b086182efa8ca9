#include "cdh/operators.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cdh {

double max_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

void require_finite(const ComplexMatrix& m, const char* what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream msg;
        msg << what << ": non-finite entry at (" << i << ", " << j << ")";
        throw ValidationError(msg.str());
      }
    }
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

HermitianOperator::HermitianOperator(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw ValidationError("HermitianOperator: matrix must be square and non-empty");
  }
  require_finite(m_, "HermitianOperator");
  const double asym = max_norm(m_ - m_.adjoint());
  if (!(asym < tolerance)) {
    std::ostringstream msg;
    msg << "HermitianOperator: max|H - H^dagger| = " << asym << " exceeds " << tolerance;
    throw ValidationError(msg.str());
  }
}

HermitianOperator HermitianOperator::hermitized(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("HermitianOperator: matrix must be square");
  return HermitianOperator(hermitian_part(m));
}

bool HermitianOperator::is_real() const { return (m_.imag().array() == 0.0).all(); }

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw ValidationError("HermitianOperator: dimension mismatch in +");
  return HermitianOperator(m_ + other.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw ValidationError("HermitianOperator: dimension mismatch in -");
  return HermitianOperator(m_ - other.m_);
}

HermitianOperator HermitianOperator::operator*(double scale) const { return HermitianOperator(scale * m_); }

Axis parse_axis(const std::string& name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  if (name == "identity" || name == "i") return Axis::identity;
  throw std::invalid_argument("unknown axis '" + name + "'");
}

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
    case Axis::identity: return "identity";
  }
  return "?";
}

namespace ops {

HermitianOperator pauli(Axis axis) {
  ComplexMatrix m(2, 2);
  const Complex i{0.0, 1.0};
  switch (axis) {
    case Axis::x: m << 0.0, 1.0, 1.0, 0.0; break;
    case Axis::y: m << 0.0, -i, i, 0.0; break;
    case Axis::z: m << 1.0, 0.0, 0.0, -1.0; break;
    case Axis::identity: m << 1.0, 0.0, 0.0, 1.0; break;
  }
  return HermitianOperator(m);
}

HermitianOperator identity(Eigen::Index dim) { return HermitianOperator(ComplexMatrix::Identity(dim, dim)); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

// I_left ⊗ m ⊗ I_right without materializing the identities.
ComplexMatrix embed(const ComplexMatrix& m, Eigen::Index left, Eigen::Index right) {
  const Eigen::Index d = m.rows();
  const Eigen::Index n = left * d * right;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        const Complex v = m(a, b);
        if (v == Complex{}) continue;
        for (Eigen::Index r = 0; r < right; ++r) {
          out((l * d + a) * right + r, (l * d + b) * right + r) = v;
        }
      }
    }
  }
  return out;
}

void check_site(int site, const ChainGeometry& geometry) {
  if (geometry.length < 1) throw std::domain_error("ChainGeometry: length must be positive");
  if (site < 0 || site >= geometry.length) {
    throw std::out_of_range("site " + std::to_string(site) + " outside chain of length " +
                            std::to_string(geometry.length));
  }
}

}  // namespace

HermitianOperator site_operator(const HermitianOperator& op, int site, const ChainGeometry& geometry) {
  check_site(site, geometry);
  if (op.dim() != 2) throw ValidationError("site_operator: expected a 2x2 operator");
  const Eigen::Index left = Eigen::Index{1} << site;
  const Eigen::Index right = Eigen::Index{1} << (geometry.length - site - 1);
  return HermitianOperator(embed(op.matrix(), left, right));
}

HermitianOperator two_site_operator(const HermitianOperator& op_a, const HermitianOperator& op_b, int i,
                                    const ChainGeometry& geometry) {
  check_site(i, geometry);
  if (geometry.length < 2) throw std::domain_error("two_site_operator: chain needs at least two sites");
  if (i == geometry.length - 1 && !geometry.periodic) {
    throw std::domain_error("two_site_operator: wrap-around bond requested on an open chain");
  }
  const int j = (i + 1) % geometry.length;
  // Site operators on distinct sites commute, so the product is Hermitian.
  const ComplexMatrix product =
      site_operator(op_a, i, geometry).matrix() * site_operator(op_b, j, geometry).matrix();
  return HermitianOperator::hermitized(product);
}

HermitianOperator collective(Axis axis, const ChainGeometry& geometry) {
  const HermitianOperator p = pauli(axis);
  ComplexMatrix sum = ComplexMatrix::Zero(geometry.dim(), geometry.dim());
  for (int i = 0; i < geometry.length; ++i) sum += site_operator(p, i, geometry).matrix();
  return HermitianOperator(sum);
}

HermitianOperator bond_sum(Axis axis, const ChainGeometry& geometry) {
  const HermitianOperator p = pauli(axis);
  ComplexMatrix sum = ComplexMatrix::Zero(geometry.dim(), geometry.dim());
  for (int i = 0; i < geometry.bond_count(); ++i) sum += two_site_operator(p, p, i, geometry).matrix();
  return HermitianOperator(sum);
}

namespace {

void check_reduced(const ComplexMatrix& rho_a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(rho_a), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw ValidationError("partial_trace_half_chain: reduced state is not positive semidefinite");
  }
}

Eigen::Index half_dim(const ChainGeometry& geometry) {
  if (geometry.length % 2 != 0) {
    throw std::domain_error("partial_trace_half_chain: chain length must be even");
  }
  return Eigen::Index{1} << (geometry.length / 2);
}

}  // namespace

ComplexMatrix partial_trace_half_chain(const ComplexMatrix& rho, const ChainGeometry& geometry,
                                       int cavity_levels) {
  const Eigen::Index da = half_dim(geometry);
  const Eigen::Index db = da;
  if (cavity_levels < 1 || rho.rows() != cavity_levels * geometry.dim() || rho.cols() != rho.rows()) {
    throw ValidationError("partial_trace_half_chain: density matrix dimension does not match geometry");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-10) {
    throw ValidationError("partial_trace_half_chain: input trace differs from 1");
  }
  ComplexMatrix rho_a = ComplexMatrix::Zero(da, da);
  const Eigen::Index chain = geometry.dim();
  for (int c = 0; c < cavity_levels; ++c) {
    for (Eigen::Index a = 0; a < da; ++a) {
      for (Eigen::Index ap = 0; ap < da; ++ap) {
        Complex acc{};
        for (Eigen::Index b = 0; b < db; ++b) {
          acc += rho(c * chain + a * db + b, c * chain + ap * db + b);
        }
        rho_a(a, ap) += acc;
      }
    }
  }
  check_reduced(rho_a);
  return rho_a;
}

ComplexMatrix partial_trace_half_chain(const ComplexVector& psi, const ChainGeometry& geometry,
                                       int cavity_levels) {
  const Eigen::Index da = half_dim(geometry);
  const Eigen::Index db = da;
  if (cavity_levels < 1 || psi.size() != cavity_levels * geometry.dim()) {
    throw ValidationError("partial_trace_half_chain: state dimension does not match geometry");
  }
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
    throw ValidationError("partial_trace_half_chain: state is not normalized");
  }
  ComplexMatrix rho_a = ComplexMatrix::Zero(da, da);
  for (int c = 0; c < cavity_levels; ++c) {
    // Row a, column b of the reshaped amplitude block for cavity level c.
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> amp(
        psi.data() + c * geometry.dim(), da, db);
    rho_a.noalias() += amp * amp.adjoint();
  }
  check_reduced(rho_a);
  return rho_a;
}

}  // namespace ops
}  // namespace cdh
