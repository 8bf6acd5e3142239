// Shared generators and matchers for the unit suites.

#pragma once

#include "qoc/numerics.hpp"
#include "qoc/rng.hpp"

namespace qoc::test {

inline ComplexMatrix random_hermitian(int n, SplitMix64& rng, double scale = 1.0) {
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      m(j, k) = scale * Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      m(k, j) = std::conj(m(j, k));
    }
    m(j, j) = scale * rng.uniform(-1.0, 1.0);
  }
  return m;
}

inline ComplexMatrix random_unitary(int n, SplitMix64& rng) {
  return expm_unitary(random_hermitian(n, rng), 1.0);
}

inline ComplexVector random_unit_vector(int n, SplitMix64& rng) {
  ComplexVector v(n);
  for (int j = 0; j < n; ++j) v(j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return v / v.norm();
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).norm();
}

}  // namespace qoc::test
