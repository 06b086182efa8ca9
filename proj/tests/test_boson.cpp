#include "doctest.h"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "cdh/boson.hpp"

using namespace cdh;
using namespace cdh::boson;

namespace {

// exp(α(a† − a)) on a finite Fock space via Eigen's matrix exponential.
Eigen::MatrixXd displacement_by_expm(double alpha, int levels) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXd g = alpha * (a.transpose() - a);
  return g.exp();
}

}  // namespace

TEST_CASE("displacement elements: anchors") {
  for (int s = 0; s < 5; ++s)
    for (int r = 0; r < 5; ++r) CHECK(displacement_element(s, r, 0.0) == (s == r ? 1.0 : 0.0));
  CHECK(displacement_element(0, 0, 2.0) == doctest::Approx(0.1353352832).epsilon(1e-10));
  for (double a : {-1.3, 0.4, 2.2}) {
    CHECK(displacement_element(0, 0, a) == doctest::Approx(std::exp(-a * a / 2)).epsilon(1e-14));
    CHECK(displacement_element(1, 0, a) == doctest::Approx(a * std::exp(-a * a / 2)).epsilon(1e-14));
    CHECK(displacement_element(2, 5, a) == doctest::Approx(displacement_element(5, 2, -a)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(displacement_element(-1, 0, 1.0), std::domain_error);
  CHECK_THROWS_AS(displacement_element(0, 0, INFINITY), std::domain_error);
}

TEST_CASE("displacement elements match the matrix exponential") {
  const Eigen::MatrixXd d = displacement_by_expm(0.7, 60);
  double worst = 0.0;
  for (int s = 0; s < 8; ++s)
    for (int r = 0; r < 8; ++r) worst = std::max(worst, std::abs(displacement_element(s, r, 0.7) - d(s, r)));
  CHECK(worst < 1e-10);
}

TEST_CASE("displacement elements stay finite at large indices") {
  const double x = displacement_element(150, 140, 3.0);
  CHECK(std::isfinite(x));
  // Unitarity of a row: Σ_r |D_sr|² = 1 (rows decay fast enough to truncate).
  double row = 0.0;
  for (int r = 0; r < 120; ++r) row += std::pow(displacement_element(10, r, 2.5), 2);
  CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermite functions") {
  CHECK(hermite_function(0, 0.0) == doctest::Approx(0.7511255444).epsilon(1e-10));
  CHECK(hermite_function(1, 0.0) == 0.0);
  CHECK_THROWS_AS(hermite_function(-1, 0.0), std::domain_error);

  // φ₃ normalization: ∫ φ₃² dx = ∫ ψ₃² e^{−x²} dx, exact for a 40-node rule.
  const QuadratureRule rule = gauss_hermite(40);
  double norm = 0.0;
  for (int q = 0; q < rule.order(); ++q) norm += rule.weights[q] * std::pow(hermite_polynomials_normalized(3, rule.nodes[q])[3], 2);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));

  // Both recurrences describe the same functions.
  const auto phi = hermite_functions(6, 0.8);
  const auto psi = hermite_polynomials_normalized(6, 0.8);
  for (int n = 0; n <= 6; ++n) CHECK(phi[n] == doctest::Approx(psi[n] * std::exp(-0.32)).epsilon(1e-14));
  CHECK(std::isfinite(hermite_function(30, 60.0)));
}

TEST_CASE("gauss-hermite rules") {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const QuadratureRule one = gauss_hermite(1);
  CHECK(one.nodes[0] == 0.0);
  CHECK(one.weights[0] == doctest::Approx(sqrt_pi).epsilon(1e-15));

  const QuadratureRule two = gauss_hermite(2);
  CHECK(two.nodes[0] == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(two.nodes[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(two.weights[0] == doctest::Approx(sqrt_pi / 2).epsilon(1e-15));

  const QuadratureRule five = gauss_hermite(5);
  double m4 = 0.0;
  for (int q = 0; q < 5; ++q) m4 += five.weights[q] * std::pow(five.nodes[q], 4);
  CHECK(std::abs(m4 - 3 * sqrt_pi / 4) < 1e-12);

  const QuadratureRule big = gauss_hermite(31);
  for (int q = 0; q < 31; ++q) CHECK(big.nodes[q] == -big.nodes[30 - q]);
  CHECK_THROWS_AS(gauss_hermite(0), std::domain_error);
}

TEST_CASE("truncated displacement") {
  SUBCASE("matches the truncated matrix exponential") {
    for (int levels : {1, 4, 9}) {
      const TruncatedDisplacement t(levels);
      CHECK((t.matrix(0.8) - displacement_by_expm(0.8, levels)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("is unitary on its own space and converges to the exact elements") {
    const TruncatedDisplacement t4(4);
    const Eigen::MatrixXd u = t4.matrix(1.1);
    CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
    const TruncatedDisplacement t60(60);
    for (int s = 0; s < 4; ++s)
      for (int r = 0; r < 4; ++r) CHECK(std::abs(t60.element(s, r, 1.1) - displacement_element(s, r, 1.1)) < 1e-12);
    CHECK(std::abs(t4.element(3, 3, 1.1) - displacement_element(3, 3, 1.1)) > 1e-2);
  }
  SUBCASE("guards") {
    CHECK_THROWS(TruncatedDisplacement(0));
    CHECK_THROWS_AS(TruncatedDisplacement(3).element(3, 0, 0.1), std::out_of_range);
  }
}
