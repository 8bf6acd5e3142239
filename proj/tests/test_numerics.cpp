#include "qoc/numerics.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace qoc;

TEST_CASE("hermitian_eig: identity and diagonal inputs") {
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  const EigenDecomposition eig = hermitian_eig(id);
  for (int j = 0; j < 4; ++j) CHECK(eig.eigenvalues(j) == doctest::Approx(1.0).epsilon(1e-14));

  ComplexMatrix d = ComplexMatrix::Zero(4, 4);
  d.diagonal() << 0.0, 2.0, 6.0, 12.0;
  const EigenDecomposition deig = hermitian_eig(d);
  CHECK(deig.eigenvalues(0) == doctest::Approx(0.0));
  CHECK(deig.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(deig.eigenvalues(2) == doctest::Approx(6.0));
  CHECK(deig.eigenvalues(3) == doctest::Approx(12.0));
  // already diagonal, ascending: eigenvectors are the identity
  CHECK(test::frobenius_distance(deig.eigenvectors.cwiseAbs(), ComplexMatrix::Identity(4, 4)) <
        1e-12);
}

TEST_CASE("hermitian_eig: pauli-x") {
  ComplexMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  const EigenDecomposition eig = hermitian_eig(sx);
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig: rejects non-Hermitian input, naming the tolerance") {
  ComplexMatrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_WITH_AS(hermitian_eig(bad), doctest::Contains("1e-10"), std::invalid_argument);
}

TEST_CASE("eigendecomposition invariants on random Hermitian matrices") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 7);
    const ComplexMatrix h = test::random_hermitian(n, rng, 3.0);
    const EigenDecomposition eig = hermitian_eig(h);
    const ComplexMatrix rebuilt = eig.eigenvectors *
                                  eig.eigenvalues.cast<Complex>().asDiagonal() *
                                  eig.eigenvectors.adjoint();
    CHECK(test::frobenius_distance(rebuilt, h) <= 1e-10 * h.norm());
    CHECK(is_unitary(eig.eigenvectors, 1e-12));
    for (int j = 1; j < n; ++j) CHECK(eig.eigenvalues(j) >= eig.eigenvalues(j - 1));
  }
}

TEST_CASE("expm_unitary: trivial cases") {
  CHECK(test::frobenius_distance(expm_unitary(ComplexMatrix::Zero(3, 3), 0.7),
                                 ComplexMatrix::Identity(3, 3)) < 1e-14);

  ComplexMatrix d = ComplexMatrix::Zero(4, 4);
  d.diagonal() << 0.0, 2.0, 6.0, 12.0;
  const ComplexMatrix u = expm_unitary(d, 1.0);
  for (int j = 0; j < 4; ++j) {
    const Complex expected = std::exp(Complex(0.0, -d(j, j).real()));
    CHECK(std::abs(u(j, j) - expected) < 1e-13);
  }

  ComplexMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  const double pi = std::acos(-1.0);
  CHECK(test::frobenius_distance(expm_unitary(sx, pi), -ComplexMatrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("expm_unitary: inverse and semigroup properties") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 7);
    const ComplexMatrix h = test::random_hermitian(n, rng, 2.0);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    CHECK(is_unitary(expm_unitary(h, a), 1e-10));
    CHECK(test::frobenius_distance(expm_unitary(h, a) * expm_unitary(h, -a),
                                   ComplexMatrix::Identity(n, n)) < 1e-10);
    CHECK(test::frobenius_distance(expm_unitary(h, a + b),
                                   expm_unitary(h, a) * expm_unitary(h, b)) < 1e-10);
  }
}

TEST_CASE("expm_directional_derivative: commuting diagonal case") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h.diagonal() << 1.0, 3.0;
  ComplexMatrix dir = ComplexMatrix::Zero(2, 2);
  dir(0, 0) = 1.0;
  const ComplexMatrix d = expm_directional_derivative(h, dir, 0.5);
  const Complex expected = Complex(0.0, -0.5) * std::exp(Complex(0.0, -0.5));
  CHECK(std::abs(d(0, 0) - expected) < 1e-14);
  CHECK(std::abs(d(1, 1)) < 1e-14);
  CHECK(std::abs(d(0, 1)) < 1e-14);
}

TEST_CASE("expm_directional_derivative: dt = 0 gives zero") {
  SplitMix64 rng(5);
  const ComplexMatrix h = test::random_hermitian(4, rng);
  const ComplexMatrix dir = test::random_hermitian(4, rng);
  CHECK(expm_directional_derivative(h, dir, 0.0).norm() < 1e-15);
}

TEST_CASE("expm_directional_derivative: matches central finite differences") {
  SplitMix64 rng(2024);
  const double h_fd = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 7);
    const ComplexMatrix h = test::random_hermitian(n, rng, 2.0);
    const ComplexMatrix dir = test::random_hermitian(n, rng, 1.0);
    const double dt = rng.uniform(0.1, 1.5);
    const ComplexMatrix analytic = expm_directional_derivative(h, dir, dt);
    const ComplexMatrix fd =
        (expm_unitary(h + h_fd * dir, dt) - expm_unitary(h - h_fd * dir, dt)) / (2.0 * h_fd);
    CHECK(test::frobenius_distance(analytic, fd) < 1e-6 * fd.norm());
  }
}

TEST_CASE("expm_directional_derivative: degenerate eigenvalues use the confluent branch") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h.diagonal() << 1.0, 1.0, 2.0;
  SplitMix64 rng(7);
  const ComplexMatrix dir = test::random_hermitian(3, rng);
  const double dt = 0.8;
  const ComplexMatrix analytic = expm_directional_derivative(h, dir, dt);
  CHECK(analytic.allFinite());
  const double h_fd = 1e-6;
  const ComplexMatrix fd =
      (expm_unitary(h + h_fd * dir, dt) - expm_unitary(h - h_fd * dir, dt)) / (2.0 * h_fd);
  CHECK(test::frobenius_distance(analytic, fd) < 1e-6 * fd.norm());
}
