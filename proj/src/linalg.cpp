#include "cdh/linalg.hpp"

#include <lapacke.h>

#include <cmath>
#include <iostream>
#include <mutex>
#include <string>

#include <Eigen/Eigenvalues>

extern "C" void openblas_set_num_threads(int);

namespace cdh::linalg {

RealEigen tridiagonal_eigen(const RealVector& diagonal, const RealVector& off_diagonal) {
  const Eigen::Index n = diagonal.size();
  if (n == 0) return {};
  if (off_diagonal.size() + 1 != n) throw ValidationError("tridiagonal_eigen: off-diagonal length must be n - 1");
  if (n == 1) return RealEigen{diagonal, Eigen::MatrixXd::Identity(1, 1)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diagonal, off_diagonal, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal_eigen: QR iteration did not converge");
  return RealEigen{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

HermitianEigen lapack_eigen(const ComplexMatrix& h, bool vectors, bool real) {
  const lapack_int n = static_cast<lapack_int>(h.rows());
  const char jobz = vectors ? 'V' : 'N';
  HermitianEigen out;
  out.values.resize(n);
  lapack_int info = 0;
  if (real) {
    Eigen::MatrixXd a = h.real();
    info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, out.values.data());
    if (vectors) out.vectors = a.cast<Complex>();
  } else {
    ComplexMatrix a = h;
    info = LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', n, reinterpret_cast<lapack_complex_double*>(a.data()), n,
                          out.values.data());
    if (vectors) out.vectors = std::move(a);
  }
  if (info != 0) throw std::runtime_error("Hermitian eigensolver failed with info = " + std::to_string(info));
  return out;
}

HermitianEigen eigen_eigen(const ComplexMatrix& h, bool vectors, bool real) {
  const auto options = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  HermitianEigen out;
  if (real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real(), options);
    if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver did not converge");
    out.values = solver.eigenvalues();
    if (vectors) out.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, options);
    if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver did not converge");
    out.values = solver.eigenvalues();
    if (vectors) out.vectors = solver.eigenvectors();
  }
  return out;
}

bool run_self_test() {
  // Large enough to reach the blocked (level-3) code paths of dsyevd.
  const int n = 96;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = std::cos(0.37 * (i + 1) * (j + 1)) + (i == j ? 0.01 * i : 0.0);
  }
  a = (0.5 * (a + a.transpose())).eval();
  try {
    const HermitianEigen e = lapack_eigen(a.cast<Complex>(), true, true);
    const Eigen::MatrixXd v = e.vectors.real();
    const double residual = (a * v - v * e.values.asDiagonal()).norm();
    return std::isfinite(residual) && residual < 1e-10;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

bool lapack_is_healthy() {
  static std::once_flag once;
  static bool healthy = false;
  std::call_once(once, [] {
    healthy = run_self_test();
    if (!healthy) {
      std::cerr << "warning: the LAPACK backend failed its eigensolver self-test; using Eigen's solver instead "
                   "(for OpenBLAS, setting OPENBLAS_CORETYPE to the CPU family usually fixes this)\n";
    }
  });
  return healthy;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h, bool vectors, Backend backend) {
  if (h.rows() != h.cols()) throw ValidationError("hermitian_eigen: matrix must be square");
  if (h.rows() == 0) return {};
  const bool real = (h.imag().array() == 0.0).all();
  if (backend == Backend::automatic) backend = lapack_is_healthy() ? Backend::lapack : Backend::eigen;
  return backend == Backend::lapack ? lapack_eigen(h, vectors, real) : eigen_eigen(h, vectors, real);
}

void use_single_threaded_blas() { openblas_set_num_threads(1); }

}  // namespace cdh::linalg
