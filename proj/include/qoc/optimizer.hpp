// optimizer.hpp — Gradient-flow integration in the search index s with
// forward Euler, fixed-step RK4, or an embedded Dormand–Prince 4(5) pair.

#pragma once

#include "qoc/dynamics.hpp"
#include "qoc/field.hpp"
#include "qoc/objective.hpp"
#include "qoc/system.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace qoc {

enum class Integrator { Euler, RK4Fixed, RK45Adaptive };
enum class Parameterization { FieldSamples, SpectralPhases };
enum class TerminationReason { Converged, MaxIterations, MaxS, StepFailure };

struct OptimizerConfig {
  Integrator integrator = Integrator::RK45Adaptive;
  // Flow constant; defaults to +1 when maximizing, -1 when minimizing. Its
  // sign must match the objective direction.
  std::optional<double> gamma;
  std::optional<double> step_size;  // fixed-step integrators
  std::optional<double> tolerance;  // adaptive integrator, absolute max-norm
  std::optional<double> eta;        // defaults to 0.001 * (j_max - j_min)
  long max_iterations = 50000;
  double max_s = std::numeric_limits<double>::infinity();
  GradientMode gradient_mode = GradientMode::Exact;

  void validate() const;
};

// One optimization task: system + objective + landscape + parameterization.
// For SpectralPhases the state vector holds the phases and `spectral`
// carries the fixed frequencies, envelope, and amplitude.
struct FlowProblem {
  QuantumSystem system;
  ObjectiveSpec objective;
  LandscapeExtrema extrema;
  Parameterization parameterization = Parameterization::FieldSamples;
  FieldGrid grid;
  std::optional<SpectralPhaseField> spectral;

  int state_size() const;
};

struct OptimizationTrace {
  long iterations_used = 0;  // accepted + rejected steps for the adaptive integrator
  std::vector<double> s_history;
  std::vector<double> j_history;
  PiecewiseField final_field;
  std::optional<RealVector> final_phases;  // SpectralPhases only
  bool converged = false;
  double final_gradient_norm = 0.0;
  double final_fluence = 0.0;
  TerminationReason termination_reason = TerminationReason::MaxIterations;
  double eta = 0.0;                // criterion actually used
  std::string failure_message;     // set on StepFailure
};

// gamma * (ascent gradient of J in the active parameterization).
RealVector flow_rhs(const FlowProblem& problem, const OptimizerConfig& config,
                    const RealVector& state);

OptimizationTrace optimize(const FlowProblem& problem, const OptimizerConfig& config,
                           const RealVector& initial_state);

enum class TerminationClass { GlobalOptimum, TrappedCritical, SaddleVicinity, Undetermined };

// Diagnoses where a finished search ended up: converged runs are global
// optima; a vanishing gradient away from the optimum is a trap, further
// classified as saddle vicinity when J sits within eta of a listed critical
// value.
TerminationClass classify_termination(const OptimizationTrace& trace,
                                      const LandscapeExtrema& extrema, double grad_tol);

std::string termination_reason_name(TerminationReason reason);
TerminationReason termination_reason_from_name(const std::string& name);

std::string trace_to_json(const OptimizationTrace& trace);
void write_trace_csv(const OptimizationTrace& trace, std::ostream& out);

}  // namespace qoc
