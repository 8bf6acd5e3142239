#include "qoc/field.hpp"

#include "qoc/rng.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace qoc {

FieldGrid make_field_grid(double total_time, int intervals) {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw std::invalid_argument("make_field_grid: total_time must be positive and finite");
  }
  if (intervals < 1) {
    throw std::invalid_argument("make_field_grid: need at least one interval");
  }
  return {total_time, intervals};
}

double gaussian_envelope(double t, double a0, double zeta, double total_time) {
  if (!(zeta > 0.0)) throw std::invalid_argument("gaussian_envelope: zeta must be positive");
  const double x = t - 0.5 * total_time;
  return a0 * std::exp(-x * x / (2.0 * zeta * zeta));
}

double fluence(const PiecewiseField& field) {
  return field.samples.squaredNorm() * field.grid.dt();
}

PiecewiseField init_field_choice_i(const QuantumSystem& system, const FieldGrid& grid,
                                   int components, double zeta, double f0, std::uint64_t seed) {
  if (components < 1) throw std::invalid_argument("init_field_choice_i: components must be >= 1");
  if (!(f0 > 0.0)) throw std::invalid_argument("init_field_choice_i: f0 must be positive");
  const TransitionBounds band = transition_frequency_bounds(system);

  SplitMix64 freq_rng(derive_seed(seed, 0));
  SplitMix64 amp_rng(derive_seed(seed, 1));
  RealVector frequencies(components);
  RealVector amplitudes(components);
  for (int m = 0; m < components; ++m) {
    frequencies(m) = freq_rng.uniform(band.omega_min, band.omega_max);
  }
  for (int m = 0; m < components; ++m) amplitudes(m) = amp_rng.uniform(0.0, 1.0);

  PiecewiseField field{grid, RealVector(grid.intervals)};
  for (int l = 1; l <= grid.intervals; ++l) {
    const double t = grid.time_at(l);
    double carrier = 0.0;
    for (int m = 0; m < components; ++m) carrier += amplitudes(m) * std::cos(frequencies(m) * t);
    field.samples(l - 1) = gaussian_envelope(t, 1.0, zeta, grid.total_time) * carrier;
  }
  const double f_unit = fluence(field);
  if (!(f_unit > 0.0)) {
    throw std::runtime_error("init_field_choice_i: drawn field is identically zero");
  }
  field.samples *= std::sqrt(f0 / f_unit);
  return field;
}

SpectralPhaseField init_spectral_phases(const FieldGrid& grid, RealVector frequencies, double zeta,
                                        double f0, std::uint64_t seed) {
  if (frequencies.size() < 1) {
    throw std::invalid_argument("init_spectral_phases: need at least one component");
  }
  if (!frequencies.allFinite()) {
    throw std::invalid_argument("init_spectral_phases: frequencies must be finite");
  }
  if (!(f0 > 0.0)) throw std::invalid_argument("init_spectral_phases: f0 must be positive");

  constexpr double two_pi = 2.0 * std::numbers::pi;
  SplitMix64 phase_rng(derive_seed(seed, 2));
  RealVector phases(frequencies.size());
  for (Eigen::Index m = 0; m < phases.size(); ++m) phases(m) = phase_rng.uniform(0.0, two_pi);

  SpectralPhaseField spec{grid, std::move(frequencies), std::move(phases), 1.0, zeta};
  const double f_unit = fluence(synthesize_choice_ii(spec));
  if (!(f_unit > 0.0)) {
    throw std::runtime_error("init_spectral_phases: drawn field is identically zero");
  }
  spec.amplitude = std::sqrt(f0 / f_unit);
  return spec;
}

PiecewiseField synthesize_choice_ii(const SpectralPhaseField& spec) {
  const FieldGrid& grid = spec.grid;
  PiecewiseField field{grid, RealVector(grid.intervals)};
  for (int l = 1; l <= grid.intervals; ++l) {
    const double t = grid.time_at(l);
    double carrier = 0.0;
    for (Eigen::Index m = 0; m < spec.frequencies.size(); ++m) {
      carrier += std::cos(spec.frequencies(m) * t + spec.phases(m));
    }
    field.samples(l - 1) =
        gaussian_envelope(t, spec.amplitude, spec.envelope_width, grid.total_time) * carrier;
  }
  return field;
}

PiecewiseField phase_sensitivity(const SpectralPhaseField& spec, int component) {
  if (component < 0 || component >= spec.frequencies.size()) {
    throw std::out_of_range("phase_sensitivity: component index out of range");
  }
  const FieldGrid& grid = spec.grid;
  PiecewiseField sens{grid, RealVector(grid.intervals)};
  for (int l = 1; l <= grid.intervals; ++l) {
    const double t = grid.time_at(l);
    sens.samples(l - 1) =
        -gaussian_envelope(t, spec.amplitude, spec.envelope_width, grid.total_time) *
        std::sin(spec.frequencies(component) * t + spec.phases(component));
  }
  return sens;
}

void write_field_csv(const PiecewiseField& field, std::ostream& out) {
  out.precision(17);
  out << "l,t_l,epsilon_l\n";
  for (int l = 1; l <= field.grid.intervals; ++l) {
    out << l << ',' << field.grid.time_at(l) << ',' << field.samples(l - 1) << '\n';
  }
}

}  // namespace qoc
