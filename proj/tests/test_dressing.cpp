#include "doctest.h"

#include <cmath>

#include "cdh/dressing.hpp"
#include "cdh/operators.hpp"

using namespace cdh;

TEST_CASE("collective sigma-x spectrum is an exact eigenbasis") {
  for (int length : {1, 2, 3, 5}) {
    const ChainGeometry g{length, true};
    const CouplingSpectrum spec = CouplingSpectrum::collective_sigma_x(length);
    const ComplexMatrix& v = spec.basis;
    const ComplexMatrix sx = ops::collective(Axis::x, g).matrix();
    CHECK(max_norm(v.adjoint() * v - ComplexMatrix::Identity(g.dim(), g.dim())) < 1e-14);
    CHECK(max_norm(sx * v - v * spec.eigenvalues.cast<Complex>().asDiagonal()) < 1e-13);
    for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
      CHECK(spec.eigenvalues(k) == std::round(spec.eigenvalues(k)));
    }
  }
}

TEST_CASE("from_operator agrees with the exact basis on the rotated blocks") {
  const ChainGeometry g{3, true};
  const HermitianOperator sz = ops::collective(Axis::z, g);
  const CouplingSpectrum exact = CouplingSpectrum::collective_sigma_x(3);
  const CouplingSpectrum numeric = CouplingSpectrum::from_operator(ops::collective(Axis::x, g));
  const auto factor = exact_displacement();
  CHECK(max_norm(polaron_blocks_serial(sz, exact, 0.4, 3, factor) - polaron_blocks_serial(sz, numeric, 0.4, 3, factor)) <
        1e-12);
}

TEST_CASE("zero coupling leaves the operator block diagonal") {
  const HermitianOperator sz = ops::pauli(Axis::z);
  const CouplingSpectrum spec = CouplingSpectrum::from_operator(ops::pauli(Axis::x));
  const ComplexMatrix blocks = polaron_blocks(sz, spec, 0.0, 3, exact_displacement());
  CHECK(max_norm(blocks - ops::kron(ComplexMatrix::Identity(3, 3), sz.matrix())) < 1e-15);
}

TEST_CASE("Rabi sigma-z ground block is dressed by exp(-2 eps^2)") {
  const double eps = 0.5;
  const HermitianOperator sz = ops::pauli(Axis::z);
  const CouplingSpectrum spec = CouplingSpectrum::from_operator(ops::pauli(Axis::x));
  const ComplexMatrix b00 = polaron_block(sz, spec, eps, 0, 0, exact_displacement());
  CHECK(max_norm(b00 - std::exp(-0.5) * sz.matrix()) < 1e-14);
  // (0,1) block: 2εe^{−2ε²} iσy.
  const Complex i{0, 1};
  const ComplexMatrix b01 = polaron_block(sz, spec, eps, 0, 1, exact_displacement());
  CHECK(max_norm(b01 - 2 * eps * std::exp(-2 * eps * eps) * i * ops::pauli(Axis::y).matrix()) < 1e-14);
}

TEST_CASE("quadrature route equals spectral route") {
  const HermitianOperator sz = ops::pauli(Axis::z);
  const HermitianOperator sx = ops::pauli(Axis::x);
  const CouplingSpectrum spec = CouplingSpectrum::from_operator(sx);
  const auto rule = boson::gauss_hermite(boson::default_quadrature_order(4));
  for (int s = 0; s < 4; ++s) {
    for (int r = 0; r < 4; ++r) {
      const auto q = boson::polaron_block_by_quadrature(sz, sx, 0.3, s, r, rule);
      CHECK(q.converged());
      CHECK(max_norm(q.block - polaron_block(sz, spec, 0.3, s, r, exact_displacement())) < 1e-10);
    }
  }
}

TEST_CASE("parallel and serial kernels give identical bits") {
  const ChainGeometry g{4, true};
  const HermitianOperator op = ops::bond_sum(Axis::y, g) + ops::collective(Axis::z, g);
  const CouplingSpectrum spec = CouplingSpectrum::collective_sigma_x(4);
  for (const auto& factor : {exact_displacement(), truncated_displacement(7)}) {
    const ComplexMatrix a = polaron_blocks(op, spec, 0.45, 5, factor);
    const ComplexMatrix b = polaron_blocks_serial(op, spec, 0.45, 5, factor);
    CHECK(a == b);
    CHECK(max_norm(a - a.adjoint()) == 0.0);
  }
}

TEST_CASE("rotation of the identity stays the identity") {
  const CouplingSpectrum spec = CouplingSpectrum::collective_sigma_x(2);
  const ComplexMatrix blocks = polaron_blocks(ops::identity(4), spec, 0.9, 4, truncated_displacement(4));
  CHECK(max_norm(blocks - ComplexMatrix::Identity(16, 16)) < 1e-13);
}

TEST_CASE("truncated factor rejects blocks beyond its levels") {
  const CouplingSpectrum spec = CouplingSpectrum::from_operator(ops::pauli(Axis::x));
  CHECK_THROWS(polaron_blocks(ops::pauli(Axis::z), spec, 0.3, 4, truncated_displacement(3)));
}
