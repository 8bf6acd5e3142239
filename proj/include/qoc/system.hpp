// system.hpp — Model Hamiltonians and unitary targets for the control studies.

#pragma once

#include "qoc/numerics.hpp"

#include <cstdint>
#include <string>

namespace qoc {

// Field-free Hamiltonian h0 and dipole coupling for an N-level system,
// H(t) = h0 - dipole * eps(t). Atomic units, hbar = 1.
struct QuantumSystem {
  int dimension = 0;
  ComplexMatrix h0;
  ComplexMatrix dipole;
};

// Validates hermiticity (1e-12) and matching dimensions.
QuantumSystem make_quantum_system(ComplexMatrix h0, ComplexMatrix dipole);

// Rotor-like ladder: h0 = diag(lambda * j (j+1)), dipole_{jk} = D^{|j-k|} / D
// off the diagonal and diagonal_dipole on it. D must lie in (0, 1].
QuantumSystem build_rotor_system(int dimension, double lambda, double dipole_decay,
                                 double diagonal_dipole = 0.0);

struct TransitionBounds {
  double omega_min = 0.0;
  double omega_max = 0.0;
};

// Smallest nonzero and largest |E_j - E_k| of a diagonal h0. Throws on a
// fully degenerate spectrum (no transition frequencies exist).
TransitionBounds transition_frequency_bounds(const QuantumSystem& system);

// W = exp(i A) for a seeded Hermitian A whose free entries are uniform on
// [0, 2pi). Draw order: upper triangle row-major (real then imaginary part
// per entry), then the real diagonal. Bit-deterministic per seed.
ComplexMatrix random_unitary_target(int dimension, std::uint64_t seed);

// The two fixed 5x5 targets. The raw matrices carry 3-decimal entries and
// are only approximately unitary; w1/w2 are their polar projections
// M (M^dag M)^{-1/2}, which the evolution-operator objective requires.
struct PresetTargets {
  ComplexMatrix w1_raw;
  ComplexMatrix w2_raw;
  ComplexMatrix w1;
  ComplexMatrix w2;
};

const PresetTargets& preset_targets();

// JSON fixture with all four matrices, entries as [re, im] pairs.
std::string preset_targets_fixture_json();

}  // namespace qoc
