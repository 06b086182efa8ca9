#include "doctest.h"

#include <random>

#include "cdh/builders.hpp"
#include "cdh/linalg.hpp"
#include "cdh/observables.hpp"

using namespace cdh;

TEST_CASE("tridiagonal eigenproblem") {
  RealVector d(3), e(2);
  d << 2, 2, 2;
  e << -1, -1;
  const linalg::RealEigen r = linalg::tridiagonal_eigen(d, e);
  CHECK(r.values(0) == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r.values(2) == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS(linalg::tridiagonal_eigen(d, d));
}

TEST_CASE("hermitian eigenproblem on both backends") {
  for (auto backend : {linalg::Backend::eigen, linalg::Backend::automatic}) {
    ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
    diag.diagonal() << 3, 1, 2;
    const auto r = linalg::hermitian_eigen(diag, true, backend);
    CHECK(r.values(0) == 1.0);
    CHECK(r.values(1) == 2.0);
    CHECK(r.values(2) == 3.0);

    const auto x = linalg::hermitian_eigen(ops::pauli(Axis::x).matrix(), true, backend);
    CHECK(x.values(0) == doctest::Approx(-1.0));
    CHECK(std::abs(std::abs(x.vectors(0, 0)) - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(x.vectors(0, 0) + x.vectors(1, 0)) < 1e-15);

    const auto y = linalg::hermitian_eigen(ops::pauli(Axis::y).matrix(), false, backend);
    CHECK(y.values(1) == doctest::Approx(1.0));
    CHECK(y.vectors.size() == 0);
  }
}

TEST_CASE("backends agree on a large chain CDH") {
  DickeHeisenbergModel m;
  m.lambda = 1.0;
  m.gamma = {0.25, 0.25, 0.0};
  m.geometry = {8, true};
  const HermitianOperator h = build_cdh_generic(m, 3);
  REQUIRE(h.dim() == 768);
  const Spectrum s = eigensolve(h);
  CHECK(relative_residual(h, s) < 1e-12);
  const auto ref = linalg::hermitian_eigen(h.matrix(), false, linalg::Backend::eigen);
  CHECK((ref.values - s.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("complex input takes the complex path") {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  ComplexMatrix a(90, 90);
  for (Eigen::Index j = 0; j < 90; ++j)
    for (Eigen::Index i = 0; i < 90; ++i) a(i, j) = Complex(g(rng), g(rng));
  const HermitianOperator h = HermitianOperator::hermitized(a);
  const Spectrum s = eigensolve(h);
  CHECK(relative_residual(h, s) < 1e-12);
  CHECK(max_norm(s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(90, 90)) < 1e-12);
}
