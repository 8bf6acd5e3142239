// dynamics.hpp — Discretized Schrödinger propagation and objective gradients
// in both control parameterizations.

#pragma once

#include "qoc/field.hpp"
#include "qoc/numerics.hpp"
#include "qoc/objective.hpp"
#include "qoc/system.hpp"

#include <vector>

namespace qoc {

// Cumulative propagators U(t_l, 0), l = 0..L, with cumulative[0] = I.
struct PropagationResult {
  std::vector<ComplexMatrix> cumulative;

  const ComplexMatrix& final_propagator() const { return cumulative.back(); }
};

// Propagation plus the per-interval eigendecompositions and increments, so a
// gradient evaluation can reuse them instead of re-diagonalizing.
struct PropagationCache {
  std::vector<EigenDecomposition> interval_eigs;  // L entries
  std::vector<ComplexMatrix> increments;          // L entries, U(t_l, t_{l-1})
  PropagationResult result;
};

PropagationResult propagate(const QuantumSystem& system, const PiecewiseField& field);
PropagationCache propagate_cached(const QuantumSystem& system, const PiecewiseField& field);

// mu(t) = U^dag mu U
ComplexMatrix dipole_heisenberg(const ComplexMatrix& u, const ComplexMatrix& mu);

// Approximate: dt-scaled samples of the continuous-time gradient density with
// mu(t) taken at interval right endpoints. Exact: the true partial derivative
// of the discretized objective with respect to each sample.
enum class GradientMode { Approximate, Exact };

struct GradientVector {
  enum class Mode { FieldSamples, SpectralPhases };
  Mode mode = Mode::FieldSamples;
  RealVector values;
};

// dJ/d eps_l, including the fluence-penalty term when the objective carries one.
GradientVector gradient_field_samples(const QuantumSystem& system, const PiecewiseField& field,
                                      const ObjectiveSpec& objective,
                                      GradientMode mode = GradientMode::Exact);
GradientVector gradient_field_samples(const QuantumSystem& system, const PiecewiseField& field,
                                      const ObjectiveSpec& objective, GradientMode mode,
                                      const PropagationCache& cache);

// dJ/d phi_m: the per-sample gradient contracted against the phase
// sensitivities of the synthesized field.
GradientVector gradient_spectral_phases(const QuantumSystem& system, const SpectralPhaseField& spec,
                                        const ObjectiveSpec& objective,
                                        GradientMode mode = GradientMode::Exact);
GradientVector gradient_spectral_phases(const QuantumSystem& system, const SpectralPhaseField& spec,
                                        const ObjectiveSpec& objective, GradientMode mode,
                                        const PiecewiseField& field, const PropagationCache& cache);

}  // namespace qoc
