#include "qoc/optimizer.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qoc {

void OptimizerConfig::validate() const {
  const bool fixed_step =
      integrator == Integrator::Euler || integrator == Integrator::RK4Fixed;
  if (fixed_step) {
    if (!step_size.has_value()) {
      throw std::invalid_argument("optimizer: fixed-step integrators require step_size");
    }
    if (tolerance.has_value()) {
      throw std::invalid_argument("optimizer: tolerance is not used by fixed-step integrators");
    }
    if (!(*step_size > 0.0)) throw std::invalid_argument("optimizer: step_size must be positive");
  } else {
    if (!tolerance.has_value()) {
      throw std::invalid_argument("optimizer: the adaptive integrator requires tolerance");
    }
    if (step_size.has_value()) {
      throw std::invalid_argument("optimizer: step_size is not used by the adaptive integrator");
    }
    if (!(*tolerance > 0.0)) throw std::invalid_argument("optimizer: tolerance must be positive");
  }
  if (eta.has_value() && !(*eta > 0.0)) {
    throw std::invalid_argument("optimizer: eta must be positive");
  }
  if (max_iterations < 1) throw std::invalid_argument("optimizer: max_iterations must be >= 1");
  if (!(max_s > 0.0)) throw std::invalid_argument("optimizer: max_s must be positive");
  if (gamma.has_value() && (*gamma == 0.0 || !std::isfinite(*gamma))) {
    throw std::invalid_argument("optimizer: gamma must be finite and nonzero");
  }
}

int FlowProblem::state_size() const {
  if (parameterization == Parameterization::FieldSamples) return grid.intervals;
  return spectral ? static_cast<int>(spectral->frequencies.size()) : 0;
}

namespace {

struct StateEval {
  double j = 0.0;
  RealVector gradient;  // ascent direction of J
  double fluence = 0.0;

  bool finite() const { return std::isfinite(j) && gradient.allFinite(); }
};

StateEval evaluate_state(const FlowProblem& problem, GradientMode mode, const RealVector& state) {
  StateEval eval;
  if (!state.allFinite()) {
    // A runaway step can hand us a non-finite state; report it as a
    // non-finite evaluation so the integrator terminates with StepFailure
    // instead of crashing inside the propagator.
    eval.j = std::numeric_limits<double>::quiet_NaN();
    eval.gradient = RealVector::Constant(state.size(), std::numeric_limits<double>::quiet_NaN());
    eval.fluence = std::numeric_limits<double>::quiet_NaN();
    return eval;
  }
  if (problem.parameterization == Parameterization::FieldSamples) {
    const PiecewiseField field{problem.grid, state};
    const PropagationCache cache = propagate_cached(problem.system, field);
    eval.j = evaluate(problem.objective, cache.result.final_propagator(), &field);
    eval.gradient =
        gradient_field_samples(problem.system, field, problem.objective, mode, cache).values;
    eval.fluence = fluence(field);
  } else {
    SpectralPhaseField spec = *problem.spectral;
    spec.phases = state;
    const PiecewiseField field = synthesize_choice_ii(spec);
    const PropagationCache cache = propagate_cached(problem.system, field);
    eval.j = evaluate(problem.objective, cache.result.final_propagator(), &field);
    eval.gradient =
        gradient_spectral_phases(problem.system, spec, problem.objective, mode, field, cache)
            .values;
    eval.fluence = fluence(field);
  }
  return eval;
}

void require_problem(const FlowProblem& problem, const RealVector& initial_state) {
  if (problem.parameterization == Parameterization::SpectralPhases && !problem.spectral) {
    throw std::invalid_argument("optimize: spectral parameterization needs a spectral template");
  }
  if (initial_state.size() != problem.state_size()) {
    throw std::invalid_argument("optimize: initial state size does not match the problem");
  }
  if (problem.objective.dimension() != problem.system.dimension) {
    throw std::invalid_argument("optimize: objective dimension does not match system");
  }
}

double max_abs(const RealVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

RealVector flow_rhs(const FlowProblem& problem, const OptimizerConfig& config,
                    const RealVector& state) {
  config.validate();
  require_problem(problem, state);
  const double gamma = config.gamma.value_or(
      problem.objective.direction == Direction::Maximize ? 1.0 : -1.0);
  return gamma * evaluate_state(problem, config.gradient_mode, state).gradient;
}

OptimizationTrace optimize(const FlowProblem& problem, const OptimizerConfig& config,
                           const RealVector& initial_state) {
  config.validate();
  require_problem(problem, initial_state);
  const Direction direction = problem.objective.direction;
  const double gamma =
      config.gamma.value_or(direction == Direction::Maximize ? 1.0 : -1.0);
  if ((direction == Direction::Maximize) != (gamma > 0.0)) {
    throw std::invalid_argument(
        "optimize: gamma must be positive when maximizing and negative when minimizing");
  }
  const double eta = config.eta.value_or(default_eta(problem.extrema));
  if (!(eta > 0.0)) throw std::invalid_argument("optimize: resolved eta must be positive");
  const GradientMode mode = config.gradient_mode;

  OptimizationTrace trace;
  trace.eta = eta;

  double s = 0.0;
  RealVector y = initial_state;
  long iterations = 0;
  TerminationReason reason = TerminationReason::MaxIterations;
  bool done = false;

  StateEval current = evaluate_state(problem, mode, y);
  trace.s_history.push_back(s);
  trace.j_history.push_back(current.j);
  if (!current.finite()) {
    reason = TerminationReason::StepFailure;
    trace.failure_message = "non-finite objective or gradient at the initial state";
    done = true;
  } else if (converged(current.j, problem.extrema, eta, direction)) {
    reason = TerminationReason::Converged;
    trace.converged = true;
    done = true;
  }

  // Applies one accepted state: records the trajectory point and runs the
  // convergence test. Returns true when the search should stop.
  auto accept = [&](double new_s, StateEval&& eval, RealVector&& new_y) {
    s = new_s;
    y = std::move(new_y);
    current = std::move(eval);
    trace.s_history.push_back(s);
    trace.j_history.push_back(current.j);
    if (!current.finite()) {
      reason = TerminationReason::StepFailure;
      trace.failure_message = "non-finite objective or gradient";
      return true;
    }
    if (converged(current.j, problem.extrema, eta, direction)) {
      reason = TerminationReason::Converged;
      trace.converged = true;
      return true;
    }
    return false;
  };

  if (!done && (config.integrator == Integrator::Euler ||
                config.integrator == Integrator::RK4Fixed)) {
    const double h = *config.step_size;
    while (true) {
      if (iterations >= config.max_iterations) {
        reason = TerminationReason::MaxIterations;
        break;
      }
      if (s >= config.max_s) {
        reason = TerminationReason::MaxS;
        break;
      }
      RealVector y_next;
      if (config.integrator == Integrator::Euler) {
        y_next = y + (h * gamma) * current.gradient;
      } else {
        const RealVector k1 = gamma * current.gradient;
        const StateEval e2 = evaluate_state(problem, mode, y + (0.5 * h) * k1);
        const RealVector k2 = gamma * e2.gradient;
        const StateEval e3 = evaluate_state(problem, mode, y + (0.5 * h) * k2);
        const RealVector k3 = gamma * e3.gradient;
        const StateEval e4 = evaluate_state(problem, mode, y + h * k3);
        const RealVector k4 = gamma * e4.gradient;
        if (!e2.finite() || !e3.finite() || !e4.finite()) {
          reason = TerminationReason::StepFailure;
          trace.failure_message = "non-finite gradient in an intermediate stage";
          ++iterations;
          break;
        }
        y_next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      ++iterations;
      StateEval eval = evaluate_state(problem, mode, y_next);
      if (accept(s + h, std::move(eval), std::move(y_next))) break;
    }
  } else if (!done) {
    // Dormand-Prince 5(4) embedded pair; FSAL, so the last stage of an
    // accepted step becomes the first stage of the next one.
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // b - b*: error-estimate weights, including the FSAL stage
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    constexpr double h_max = 1e30;

    const double tau = *config.tolerance;
    RealVector k1 = gamma * current.gradient;
    double h = 1e-3 / (1.0 + max_abs(k1));
    while (true) {
      if (iterations >= config.max_iterations) {
        reason = TerminationReason::MaxIterations;
        break;
      }
      if (s >= config.max_s) {
        reason = TerminationReason::MaxS;
        break;
      }
      if (!(h > 0.0) || s + h == s) {
        reason = TerminationReason::StepFailure;
        trace.failure_message = "step size underflow";
        break;
      }
      const StateEval s2 = evaluate_state(problem, mode, y + h * (a21 * k1));
      const RealVector k2 = gamma * s2.gradient;
      const StateEval s3 = evaluate_state(problem, mode, y + h * (a31 * k1 + a32 * k2));
      const RealVector k3 = gamma * s3.gradient;
      const StateEval s4 = evaluate_state(problem, mode, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const RealVector k4 = gamma * s4.gradient;
      const StateEval s5 =
          evaluate_state(problem, mode, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const RealVector k5 = gamma * s5.gradient;
      const StateEval s6 = evaluate_state(
          problem, mode, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const RealVector k6 = gamma * s6.gradient;
      RealVector y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      StateEval s7 = evaluate_state(problem, mode, y5);
      const RealVector k7 = gamma * s7.gradient;
      if (!s2.finite() || !s3.finite() || !s4.finite() || !s5.finite() || !s6.finite() ||
          !s7.finite()) {
        reason = TerminationReason::StepFailure;
        trace.failure_message = "non-finite gradient in an embedded stage";
        ++iterations;
        break;
      }
      const double err =
          h * max_abs(e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      ++iterations;
      bool stop = false;
      if (err <= tau) {
        stop = accept(s + h, std::move(s7), std::move(y5));
        if (!stop) k1 = k7;
      }
      const double factor =
          (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(tau / err,  0.2), 0.2, 5.0);
      h = std::min(h * factor, h_max);
      if (stop) break;
    }
  }

  trace.iterations_used = iterations;
  trace.termination_reason = reason;
  trace.final_gradient_norm = current.gradient.allFinite() ? current.gradient.norm()
                                                           : std::numeric_limits<double>::quiet_NaN();
  trace.final_fluence = current.fluence;
  if (problem.parameterization == Parameterization::FieldSamples) {
    trace.final_field = PiecewiseField{problem.grid, y};
  } else {
    SpectralPhaseField spec = *problem.spectral;
    spec.phases = y;
    trace.final_phases = y;
    trace.final_field = synthesize_choice_ii(spec);
  }
  return trace;
}

TerminationClass classify_termination(const OptimizationTrace& trace,
                                      const LandscapeExtrema& extrema, double grad_tol) {
  if (trace.converged) return TerminationClass::GlobalOptimum;
  if (trace.final_gradient_norm < grad_tol) {
    const double j = trace.j_history.back();
    for (double c : extrema.critical_values) {
      if (std::abs(j - c) <= trace.eta) return TerminationClass::SaddleVicinity;
    }
    return TerminationClass::TrappedCritical;
  }
  return TerminationClass::Undetermined;
}

std::string termination_reason_name(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::Converged: return "converged";
    case TerminationReason::MaxIterations: return "max_iterations";
    case TerminationReason::MaxS: return "max_s";
    case TerminationReason::StepFailure: return "step_failure";
  }
  return "unknown";
}

TerminationReason termination_reason_from_name(const std::string& name) {
  if (name == "converged") return TerminationReason::Converged;
  if (name == "max_iterations") return TerminationReason::MaxIterations;
  if (name == "max_s") return TerminationReason::MaxS;
  if (name == "step_failure") return TerminationReason::StepFailure;
  throw std::invalid_argument("unknown termination reason: " + name);
}

std::string trace_to_json(const OptimizationTrace& trace) {
  nlohmann::json doc;
  doc["iterations_used"] = trace.iterations_used;
  doc["converged"] = trace.converged;
  doc["termination_reason"] = termination_reason_name(trace.termination_reason);
  doc["final_gradient_norm"] = trace.final_gradient_norm;
  doc["final_fluence"] = trace.final_fluence;
  doc["eta"] = trace.eta;
  doc["s_history"] = trace.s_history;
  doc["j_history"] = trace.j_history;
  doc["final_field"] = std::vector<double>(trace.final_field.samples.data(),
                                           trace.final_field.samples.data() +
                                               trace.final_field.samples.size());
  doc["grid"] = {{"total_time", trace.final_field.grid.total_time},
                 {"intervals", trace.final_field.grid.intervals}};
  if (trace.final_phases) {
    doc["final_phases"] = std::vector<double>(trace.final_phases->data(),
                                              trace.final_phases->data() +
                                                  trace.final_phases->size());
  }
  if (!trace.failure_message.empty()) doc["failure_message"] = trace.failure_message;
  return doc.dump(2) + "\n";
}

void write_trace_csv(const OptimizationTrace& trace, std::ostream& out) {
  out.precision(17);
  out << "s,J\n";
  for (std::size_t i = 0; i < trace.s_history.size(); ++i) {
    out << trace.s_history[i] << ',' << trace.j_history[i] << '\n';
  }
}

}  // namespace qoc
