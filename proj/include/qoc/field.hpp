// field.hpp — Piecewise-constant control fields, both control parameterizations
// (free samples / fixed-amplitude spectral phases), and fluence.

#pragma once

#include "qoc/numerics.hpp"
#include "qoc/system.hpp"

#include <cstdint>
#include <iosfwd>

namespace qoc {

// L equal intervals on [0, T]; samples live at right endpoints t_l = l * dt,
// l = 1..L, each constant on (t_{l-1}, t_l].
struct FieldGrid {
  double total_time = 0.0;
  int intervals = 0;

  double dt() const { return total_time / intervals; }
  double time_at(int l) const { return l * dt(); }
};

FieldGrid make_field_grid(double total_time, int intervals);

struct PiecewiseField {
  FieldGrid grid;
  RealVector samples;  // length L; samples[l-1] is the value on (t_{l-1}, t_l]
};

// Fixed-frequency, unit-amplitude spectral components under a Gaussian
// envelope; only the phases vary during a search. The overall amplitude is
// calibrated once at initialization and then frozen.
struct SpectralPhaseField {
  FieldGrid grid;
  RealVector frequencies;  // M, fixed
  RealVector phases;       // M
  double amplitude = 1.0;  // envelope peak A0, frozen after calibration
  double envelope_width = 1.0;
};

// a0 * exp(-(t - T/2)^2 / (2 zeta^2))
double gaussian_envelope(double t, double a0, double zeta, double total_time);

// F = sum_l eps_l^2 dt
double fluence(const PiecewiseField& field);

// Initial field for the free-sample parameterization: a Gaussian-windowed sum
// of `components` cosines with frequencies uniform on the system's transition
// band and amplitudes uniform on [0, 1], rescaled to fluence f0. Sub-streams
// are derived from `seed` in a fixed order (frequencies = 0, amplitudes = 1).
PiecewiseField init_field_choice_i(const QuantumSystem& system, const FieldGrid& grid,
                                   int components, double zeta, double f0, std::uint64_t seed);

// Spectral-phase parameterization with the given fixed frequencies: draws the
// phase vector uniform on [0, 2pi) (sub-stream tag 2) and calibrates the
// envelope amplitude so the initial synthesized field has fluence f0.
SpectralPhaseField init_spectral_phases(const FieldGrid& grid, RealVector frequencies, double zeta,
                                        double f0, std::uint64_t seed);

// eps_l = A(t_l) * sum_m cos(w_m t_l + phi_m)
PiecewiseField synthesize_choice_ii(const SpectralPhaseField& spec);

// d eps_l / d phi_m = -A(t_l) sin(w_m t_l + phi_m), for component index m (0-based).
PiecewiseField phase_sensitivity(const SpectralPhaseField& spec, int component);

// CSV columns: l, t_l, epsilon_l
void write_field_csv(const PiecewiseField& field, std::ostream& out);

}  // namespace qoc
