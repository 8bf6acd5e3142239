// numerics.hpp — Dense complex linear algebra for small N-level systems:
// Hermitian eigendecomposition, unitary exponentials exp(-i H dt), and the
// exact directional derivative of the exponential map.

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace qoc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;

// ||M - M^dag||_F <= tol
bool is_hermitian(const ComplexMatrix& m, double tol);

// ||M^dag M - I||_F <= tol
bool is_unitary(const ComplexMatrix& m, double tol);

struct EigenDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

// Throws std::invalid_argument when h is not Hermitian within kHermitianTol.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

// exp(-i h dt) with hbar = 1. dt may carry either sign.
ComplexMatrix expm_unitary(const ComplexMatrix& h, double dt);
ComplexMatrix expm_unitary(const EigenDecomposition& eig, double dt);

// d/de exp(-i (h + e * direction) dt) at e = 0, via divided differences of
// f(x) = exp(-i x dt) in the eigenbasis of h. Nearly equal eigenvalues fall
// back to the confluent (derivative) branch.
ComplexMatrix expm_directional_derivative(const ComplexMatrix& h, const ComplexMatrix& direction,
                                          double dt);
ComplexMatrix expm_directional_derivative(const EigenDecomposition& eig,
                                          const ComplexMatrix& direction, double dt);

}  // namespace qoc
