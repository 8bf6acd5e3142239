#include "qoc/numerics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qoc {

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

namespace {

void require_hermitian(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square with dimension >= 2");
  }
  if (!is_hermitian(m, kHermitianTol)) {
    std::ostringstream msg;
    msg << who << ": input violates the Hermiticity tolerance " << kHermitianTol
        << " (||M - M^dag||_F = " << (m - m.adjoint()).norm() << ")";
    throw std::invalid_argument(msg.str());
  }
}

// sin(x)/x, series near zero
double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_unitary(const EigenDecomposition& eig, double dt) {
  const Eigen::Index n = eig.eigenvalues.size();
  ComplexVector phases(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    phases(j) = std::exp(Complex(0.0, -eig.eigenvalues(j) * dt));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix expm_unitary(const ComplexMatrix& h, double dt) {
  if (!std::isfinite(dt)) throw std::invalid_argument("expm_unitary: dt must be finite");
  return expm_unitary(hermitian_eig(h), dt);
}

ComplexMatrix expm_directional_derivative(const EigenDecomposition& eig,
                                          const ComplexMatrix& direction, double dt) {
  require_hermitian(direction, "expm_directional_derivative");
  const Eigen::Index n = eig.eigenvalues.size();
  if (direction.rows() != n) {
    throw std::invalid_argument("expm_directional_derivative: dimension mismatch");
  }
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix d_eig = v.adjoint() * direction * v;
  // Divided difference of f(x) = exp(-i x dt):
  //   f[a,b] = -i dt exp(-i (a+b) dt / 2) sinc((a-b) dt / 2),
  // which reduces to the confluent branch -i dt exp(-i a dt) as b -> a.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double mean = 0.5 * (eig.eigenvalues(j) + eig.eigenvalues(k));
      const double half_gap = 0.5 * (eig.eigenvalues(j) - eig.eigenvalues(k));
      d_eig(j, k) *= Complex(0.0, -dt) * std::exp(Complex(0.0, -mean * dt)) * sinc(half_gap * dt);
    }
  }
  return v * d_eig * v.adjoint();
}

ComplexMatrix expm_directional_derivative(const ComplexMatrix& h, const ComplexMatrix& direction,
                                          double dt) {
  if (!std::isfinite(dt)) {
    throw std::invalid_argument("expm_directional_derivative: dt must be finite");
  }
  return expm_directional_derivative(hermitian_eig(h), direction, dt);
}

}  // namespace qoc
