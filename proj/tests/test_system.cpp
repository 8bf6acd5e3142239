#include "qoc/system.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

using namespace qoc;

TEST_CASE("build_rotor_system: ladder spectrum and dipole decay") {
  const QuantumSystem sys = build_rotor_system(6, 1.0, 0.5);
  const double expected[6] = {0.0, 2.0, 6.0, 12.0, 20.0, 30.0};
  for (int j = 0; j < 6; ++j) CHECK(sys.h0(j, j).real() == doctest::Approx(expected[j]));
  CHECK(sys.dipole(0, 1).real() == doctest::Approx(1.0));   // |j-k| = 1 -> D^1/D
  CHECK(sys.dipole(0, 2).real() == doctest::Approx(0.5));   // |j-k| = 2 -> D^2/D
  CHECK(sys.dipole(0, 3).real() == doctest::Approx(0.25));
  CHECK(sys.dipole(2, 2).real() == doctest::Approx(0.0));
  CHECK(is_hermitian(sys.h0, 1e-12));
  CHECK(is_hermitian(sys.dipole, 1e-12));
}

TEST_CASE("build_rotor_system: diagonal dipole sets Tr(mu) = N") {
  const QuantumSystem sys = build_rotor_system(5, 1.0, 0.9, 1.0);
  for (int j = 0; j < 5; ++j) CHECK(sys.dipole(j, j).real() == doctest::Approx(1.0));
  CHECK(sys.dipole.trace().real() == doctest::Approx(5.0));
}

TEST_CASE("build_rotor_system: rejects bad parameters") {
  CHECK_THROWS_AS(build_rotor_system(1, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_rotor_system(4, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_rotor_system(4, 1.0, 1.5), std::invalid_argument);
}

namespace {

// independent scan over all level pairs
TransitionBounds brute_force_bounds(const QuantumSystem& sys) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int j = 0; j < sys.dimension; ++j) {
    for (int k = 0; k < sys.dimension; ++k) {
      const double gap = std::abs(sys.h0(j, j).real() - sys.h0(k, k).real());
      if (gap == 0.0) continue;
      lo = std::min(lo, gap);
      hi = std::max(hi, gap);
    }
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("transition_frequency_bounds: rotor systems") {
  const TransitionBounds b6 = transition_frequency_bounds(build_rotor_system(6, 1.0, 0.5));
  CHECK(b6.omega_min == doctest::Approx(2.0));
  CHECK(b6.omega_max == doctest::Approx(30.0));

  const TransitionBounds b4 = transition_frequency_bounds(build_rotor_system(4, 1.0, 0.9));
  CHECK(b4.omega_min == doctest::Approx(2.0));
  CHECK(b4.omega_max == doctest::Approx(12.0));
}

TEST_CASE("transition_frequency_bounds: equals the brute-force pair scan") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 7);
    ComplexMatrix h0 = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) h0(j, j) = rng.uniform(-5.0, 5.0);
    const QuantumSystem sys = make_quantum_system(h0, ComplexMatrix::Zero(n, n));
    const TransitionBounds expected = brute_force_bounds(sys);
    const TransitionBounds got = transition_frequency_bounds(sys);
    CHECK(got.omega_min == doctest::Approx(expected.omega_min));
    CHECK(got.omega_max == doctest::Approx(expected.omega_max));
  }
}

TEST_CASE("transition_frequency_bounds: degenerate spectrum is an error") {
  ComplexMatrix h0 = ComplexMatrix::Zero(2, 2);
  h0.diagonal() << 5.0, 5.0;
  const QuantumSystem sys = make_quantum_system(h0, ComplexMatrix::Zero(2, 2));
  CHECK_THROWS_AS(transition_frequency_bounds(sys), std::invalid_argument);
}

TEST_CASE("random_unitary_target: unitary and deterministic") {
  for (std::uint64_t seed : {1ULL, 42ULL, 9999ULL}) {
    const ComplexMatrix w = random_unitary_target(5, seed);
    CHECK(is_unitary(w, 1e-10));
    const ComplexMatrix w_again = random_unitary_target(5, seed);
    CHECK((w - w_again).norm() == 0.0);  // bit-identical
  }
  // exp(i * 0) = I
  CHECK(test::frobenius_distance(expm_unitary(ComplexMatrix::Zero(5, 5), -1.0),
                                 ComplexMatrix::Identity(5, 5)) < 1e-14);
}

TEST_CASE("random_unitary_target: unitarity over many seeds") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    CHECK(is_unitary(random_unitary_target(5, seed), 1e-10));
  }
}

TEST_CASE("preset_targets: raw entries, near-unitarity, and projection") {
  const PresetTargets& t = preset_targets();
  CHECK(t.w1_raw(0, 0) == Complex(0.456, -0.034));
  CHECK(t.w2_raw(0, 0) == Complex(0.131, 0.215));
  CHECK((t.w1_raw.adjoint() * t.w1_raw - ComplexMatrix::Identity(5, 5)).norm() < 5e-3);
  CHECK((t.w2_raw.adjoint() * t.w2_raw - ComplexMatrix::Identity(5, 5)).norm() < 5e-3);
  CHECK(is_unitary(t.w1, 1e-12));
  CHECK(is_unitary(t.w2, 1e-12));
  // projection only nudges the rounded entries
  CHECK((t.w1 - t.w1_raw).cwiseAbs().maxCoeff() < 2e-3);
  CHECK((t.w2 - t.w2_raw).cwiseAbs().maxCoeff() < 2e-3);
}

TEST_CASE("preset_targets: committed JSON fixture matches regeneration") {
  std::ifstream in(QOC_SOURCE_DIR "/data/preset_targets.json");
  REQUIRE_MESSAGE(in.good(), "data/preset_targets.json missing");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == preset_targets_fixture_json());
}
