// linalg.hpp — eigensolver front door. Everything else in the library
// diagonalizes through these functions.

#pragma once

#include "cdh/operators.hpp"

namespace cdh::linalg {

struct RealEigen {
  RealVector values;        // ascending
  Eigen::MatrixXd vectors;  // columns
};

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns
};

/// Symmetric tridiagonal eigenproblem (implicit QL/QR).
RealEigen tridiagonal_eigen(const RealVector& diagonal, const RealVector& off_diagonal);

enum class Backend {
  automatic,  // LAPACK if it passes its self-test, otherwise Eigen
  lapack,     // dsyevd / zheevd, divide and conquer
  eigen,      // Eigen's SelfAdjointEigenSolver
};

/// Dense Hermitian eigenproblem. Real input (imaginary part exactly zero)
/// takes the real symmetric path. `vectors` may be false for eigenvalues only.
HermitianEigen hermitian_eigen(const ComplexMatrix& h, bool vectors = true, Backend backend = Backend::automatic);

/// Result of the one-time LAPACK self-test run by Backend::automatic: a
/// fixed 96 × 96 symmetric problem must have residual below 1e-10. Some
/// OpenBLAS builds pick a broken kernel on CPUs they misdetect; when that
/// happens the library falls back to Eigen and says so once on stderr.
bool lapack_is_healthy();

/// Pin the BLAS backend to one thread so results do not depend on how many
/// threads the caller happens to run.
void use_single_threaded_blas();

}  // namespace cdh::linalg
