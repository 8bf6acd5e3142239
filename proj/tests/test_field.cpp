#include "qoc/field.hpp"

#include "qoc/rng.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

using namespace qoc;

TEST_CASE("gaussian_envelope: peak, tail, symmetry") {
  const double T = 50.0;
  const double zeta = T / 10.0;
  CHECK(gaussian_envelope(T / 2.0, 3.0, zeta, T) == doctest::Approx(3.0));
  CHECK(gaussian_envelope(0.0, 3.0, zeta, T) == doctest::Approx(3.0 * std::exp(-12.5)));
  SplitMix64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const double t = rng.uniform(0.0, T);
    CHECK(gaussian_envelope(t, 1.0, zeta, T) ==
          doctest::Approx(gaussian_envelope(T - t, 1.0, zeta, T)));
  }
  CHECK_THROWS_AS(gaussian_envelope(0.0, 1.0, 0.0, T), std::invalid_argument);
}

TEST_CASE("fluence: zero and constant fields") {
  const FieldGrid grid = make_field_grid(10.0, 40);
  PiecewiseField zero{grid, RealVector::Zero(40)};
  CHECK(fluence(zero) == 0.0);
  PiecewiseField constant{grid, RealVector::Constant(40, 1.5)};
  CHECK(fluence(constant) == doctest::Approx(1.5 * 1.5 * 10.0));
}

TEST_CASE("init_field_choice_i: reproduces the documented construction bit-for-bit") {
  const QuantumSystem sys = build_rotor_system(4, 1.0, 0.9);
  const FieldGrid grid = make_field_grid(50.0, 128);
  const int m_components = 20;
  const double zeta = 5.0;
  const double f0 = 10.0;
  const std::uint64_t seed = 77;
  const PiecewiseField field = init_field_choice_i(sys, grid, m_components, zeta, f0, seed);

  // independent reconstruction from the documented sub-stream order
  SplitMix64 freq_rng(derive_seed(seed, 0));
  SplitMix64 amp_rng(derive_seed(seed, 1));
  RealVector w(m_components), a(m_components);
  for (int m = 0; m < m_components; ++m) w(m) = freq_rng.uniform(2.0, 12.0);
  for (int m = 0; m < m_components; ++m) a(m) = amp_rng.uniform(0.0, 1.0);
  RealVector raw(grid.intervals);
  for (int l = 1; l <= grid.intervals; ++l) {
    const double t = grid.time_at(l);
    double c = 0.0;
    for (int m = 0; m < m_components; ++m) c += a(m) * std::cos(w(m) * t);
    raw(l - 1) = gaussian_envelope(t, 1.0, zeta, grid.total_time) * c;
  }
  const double a0 = std::sqrt(f0 / (raw.squaredNorm() * grid.dt()));
  CHECK((field.samples - a0 * raw).norm() == 0.0);

  // envelope suppresses the endpoints: |eps_1| <= A0 M exp(-(T/2 - dt)^2 / (2 zeta^2))
  const double bound =
      a0 * m_components *
      std::exp(-std::pow(grid.total_time / 2.0 - grid.dt(), 2) / (2.0 * zeta * zeta));
  CHECK(std::abs(field.samples(0)) <= bound + 1e-15);
}

TEST_CASE("init_field_choice_i: fluence normalization over many seeds") {
  const QuantumSystem sys = build_rotor_system(4, 1.0, 0.9);
  const FieldGrid grid = make_field_grid(50.0, 64);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const PiecewiseField field = init_field_choice_i(sys, grid, 20, 5.0, 1e3, seed);
    CHECK(std::abs(fluence(field) - 1e3) <= 1e-9 * 1e3);
  }
}

TEST_CASE("init_field_choice_i: degenerate system propagates the bounds error") {
  ComplexMatrix h0 = ComplexMatrix::Zero(2, 2);
  h0.diagonal() << 1.0, 1.0;
  const QuantumSystem sys = make_quantum_system(h0, ComplexMatrix::Zero(2, 2));
  CHECK_THROWS_AS(init_field_choice_i(sys, make_field_grid(10.0, 16), 4, 1.0, 1.0, 0),
                  std::invalid_argument);
}

TEST_CASE("synthesize_choice_ii: single zero-frequency component reduces to the envelope") {
  const FieldGrid grid = make_field_grid(10.0, 32);
  SpectralPhaseField spec{grid, RealVector::Zero(1), RealVector::Zero(1), 2.5, 1.0};
  const PiecewiseField field = synthesize_choice_ii(spec);
  for (int l = 1; l <= grid.intervals; ++l) {
    CHECK(field.samples(l - 1) ==
          doctest::Approx(gaussian_envelope(grid.time_at(l), 2.5, 1.0, 10.0)));
  }
}

TEST_CASE("synthesize_choice_ii: phase periodicity and sign flip") {
  const FieldGrid grid = make_field_grid(20.0, 64);
  RealVector freqs(3);
  freqs << 1.0, 2.0, 3.0;
  SpectralPhaseField spec = init_spectral_phases(grid, freqs, 2.0, 5.0, 123);
  const PiecewiseField base = synthesize_choice_ii(spec);

  SpectralPhaseField shifted = spec;
  shifted.phases.array() += 2.0 * std::numbers::pi;
  CHECK((synthesize_choice_ii(shifted).samples - base.samples).cwiseAbs().maxCoeff() < 1e-11);

  SpectralPhaseField single{grid, RealVector::Zero(1), RealVector::Zero(1), 1.0, 2.0};
  SpectralPhaseField flipped = single;
  flipped.phases(0) = std::numbers::pi;
  CHECK((synthesize_choice_ii(flipped).samples + synthesize_choice_ii(single).samples)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("init_spectral_phases: calibrated fluence and determinism") {
  const FieldGrid grid = make_field_grid(50.0, 512);
  RealVector freqs(16);
  for (int m = 0; m < 16; ++m) freqs(m) = m + 1;
  const SpectralPhaseField spec = init_spectral_phases(grid, freqs, 5.0, 1e3, 9);
  CHECK(fluence(synthesize_choice_ii(spec)) == doctest::Approx(1e3).epsilon(1e-12));
  const SpectralPhaseField again = init_spectral_phases(grid, freqs, 5.0, 1e3, 9);
  CHECK((spec.phases - again.phases).norm() == 0.0);
  CHECK(spec.amplitude == again.amplitude);
}

TEST_CASE("choice (ii): fluence stays near F0 across the phase cube") {
  // fixed envelope and unit amplitudes bound the drift
  const FieldGrid grid = make_field_grid(50.0, 512);
  RealVector freqs(16);
  for (int m = 0; m < 16; ++m) freqs(m) = m + 1;
  const double f0 = 10.0;
  const SpectralPhaseField calibrated = init_spectral_phases(grid, freqs, 5.0, f0, 1);

  SplitMix64 rng(99);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int trial = 0; trial < 100; ++trial) {
    SpectralPhaseField moved = calibrated;
    for (int m = 0; m < 16; ++m) moved.phases(m) = rng.uniform(0.0, two_pi);
    const double f = fluence(synthesize_choice_ii(moved));
    CHECK(std::abs(f - f0) / f0 < 0.05);
  }
}

TEST_CASE("phase_sensitivity: closed forms and the finite-difference oracle") {
  const FieldGrid grid = make_field_grid(10.0, 64);

  SpectralPhaseField flat{grid, RealVector::Zero(1), RealVector::Zero(1), 1.3, 2.0};
  CHECK(phase_sensitivity(flat, 0).samples.cwiseAbs().maxCoeff() == 0.0);

  SpectralPhaseField quarter = flat;
  quarter.phases(0) = std::numbers::pi / 2.0;
  const PiecewiseField sens = phase_sensitivity(quarter, 0);
  for (int l = 1; l <= grid.intervals; ++l) {
    CHECK(sens.samples(l - 1) ==
          doctest::Approx(-gaussian_envelope(grid.time_at(l), 1.3, 2.0, 10.0)));
  }

  RealVector freqs(4);
  freqs << 0.7, 1.9, 3.1, 5.2;
  const SpectralPhaseField spec = init_spectral_phases(grid, freqs, 2.0, 3.0, 4);
  const double h = 1e-6;
  for (int m = 0; m < 4; ++m) {
    SpectralPhaseField plus = spec;
    SpectralPhaseField minus = spec;
    plus.phases(m) += h;
    minus.phases(m) -= h;
    const RealVector fd =
        (synthesize_choice_ii(plus).samples - synthesize_choice_ii(minus).samples) / (2.0 * h);
    CHECK((phase_sensitivity(spec, m).samples - fd).cwiseAbs().maxCoeff() < 1e-8);
  }

  CHECK_THROWS_AS(phase_sensitivity(spec, 4), std::out_of_range);
  CHECK_THROWS_AS(phase_sensitivity(spec, -1), std::out_of_range);
}

TEST_CASE("write_field_csv: header and row count") {
  const FieldGrid grid = make_field_grid(1.0, 4);
  PiecewiseField field{grid, RealVector::LinSpaced(4, 0.1, 0.4)};
  std::ostringstream out;
  write_field_csv(field, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "l,t_l,epsilon_l");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}
