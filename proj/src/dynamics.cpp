#include "qoc/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc {

namespace {

void require_dimensions(const QuantumSystem& system, const PiecewiseField& field,
                        const ObjectiveSpec* objective) {
  if (field.samples.size() != field.grid.intervals) {
    throw std::invalid_argument("dynamics: field sample count does not match its grid");
  }
  if (field.grid.intervals < 1) {
    throw std::invalid_argument("dynamics: field grid has no intervals");
  }
  if (objective != nullptr && objective->dimension() != system.dimension) {
    throw std::invalid_argument("dynamics: objective dimension does not match system");
  }
}

}  // namespace

PropagationCache propagate_cached(const QuantumSystem& system, const PiecewiseField& field) {
  require_dimensions(system, field, nullptr);
  const int n = system.dimension;
  const int intervals = field.grid.intervals;
  const double dt = field.grid.dt();

  PropagationCache cache;
  cache.interval_eigs.reserve(intervals);
  cache.increments.reserve(intervals);
  cache.result.cumulative.resize(intervals + 1);
  cache.result.cumulative[0] = ComplexMatrix::Identity(n, n);
  for (int l = 1; l <= intervals; ++l) {
    const ComplexMatrix h = system.h0 - field.samples(l - 1) * system.dipole;
    cache.interval_eigs.push_back(hermitian_eig(h));
    cache.increments.push_back(expm_unitary(cache.interval_eigs.back(), dt));
    cache.result.cumulative[l].noalias() = cache.increments.back() * cache.result.cumulative[l - 1];
  }
  return cache;
}

PropagationResult propagate(const QuantumSystem& system, const PiecewiseField& field) {
  return propagate_cached(system, field).result;
}

ComplexMatrix dipole_heisenberg(const ComplexMatrix& u, const ComplexMatrix& mu) {
  if (!is_unitary(u, 1e-6)) {
    throw std::invalid_argument("dipole_heisenberg: u is not unitary within 1e-6");
  }
  if (!is_hermitian(mu, kHermitianTol)) {
    throw std::invalid_argument("dipole_heisenberg: mu is not Hermitian");
  }
  return u.adjoint() * mu * u;
}

namespace {

// Tr(X Y) without forming the product.
Complex trace_product(const ComplexMatrix& x, const ComplexMatrix& y) {
  return x.cwiseProduct(y.transpose()).sum();
}

RealVector exact_sample_gradient(const QuantumSystem& system, const PiecewiseField& field,
                                 const ObjectiveSpec& objective, const PropagationCache& cache) {
  const int n = system.dimension;
  const int intervals = field.grid.intervals;
  const double dt = field.grid.dt();
  const std::vector<ComplexMatrix>& cumulative = cache.result.cumulative;
  const ComplexMatrix& u_final = cumulative[intervals];
  const ComplexMatrix neg_mu = -system.dipole;

  // Per-objective fixed data so each interval only needs a cheap contraction
  // of d U_T / d eps_l = suffix_l * dU_l * cumulative[l-1].
  Complex overlap{};
  ComplexMatrix contraction;  // Observable: rho0 U_T^dag theta; EvolutionOp: conj(W)
  switch (objective.kind) {
    case ObjectiveKind::StateTransition:
      overlap = (objective.final_state.adjoint() * u_final * objective.initial_state)(0);
      break;
    case ObjectiveKind::Observable:
      contraction = objective.rho0 * u_final.adjoint() * objective.theta;
      break;
    case ObjectiveKind::EvolutionOperator:
      contraction = objective.target.conjugate();
      break;
  }

  RealVector out(intervals);
  ComplexMatrix suffix = ComplexMatrix::Identity(n, n);  // U_L ... U_{l+1}
  ComplexMatrix du_interval(n, n);
  ComplexMatrix du_total(n, n);
  for (int l = intervals; l >= 1; --l) {
    du_interval = expm_directional_derivative(cache.interval_eigs[l - 1], neg_mu, dt);
    du_total.noalias() = suffix * du_interval * cumulative[l - 1];
    switch (objective.kind) {
      case ObjectiveKind::StateTransition: {
        const Complex d_overlap =
            (objective.final_state.adjoint() * du_total * objective.initial_state)(0);
        out(l - 1) = 2.0 * (std::conj(overlap) * d_overlap).real();
        break;
      }
      case ObjectiveKind::Observable:
        // d J = 2 Re Tr(U_T^dag theta dU rho0) = 2 Re Tr(dU rho0 U_T^dag theta)
        out(l - 1) = 2.0 * trace_product(du_total, contraction).real();
        break;
      case ObjectiveKind::EvolutionOperator:
        // d J = -Re Tr(W^dag dU) / (2N)
        out(l - 1) = -contraction.cwiseProduct(du_total).sum().real() / (2.0 * n);
        break;
    }
    suffix *= cache.increments[l - 1];
  }
  return out;
}

RealVector approximate_sample_gradient(const QuantumSystem& system, const PiecewiseField& field,
                                       const ObjectiveSpec& objective,
                                       const PropagationCache& cache) {
  const int n = system.dimension;
  const int intervals = field.grid.intervals;
  const double dt = field.grid.dt();
  const std::vector<ComplexMatrix>& cumulative = cache.result.cumulative;
  const ComplexMatrix& u_final = cumulative[intervals];

  ComplexVector bra;            // StateTransition: U_T^dag |f>
  Complex overlap{};
  ComplexMatrix contraction;    // Observable: U_T^dag theta U_T rho0; EvolutionOp: W^dag U_T
  switch (objective.kind) {
    case ObjectiveKind::StateTransition:
      overlap = (objective.final_state.adjoint() * u_final * objective.initial_state)(0);
      bra = u_final.adjoint() * objective.final_state;
      break;
    case ObjectiveKind::Observable:
      contraction = u_final.adjoint() * objective.theta * u_final * objective.rho0;
      break;
    case ObjectiveKind::EvolutionOperator:
      contraction = objective.target.adjoint() * u_final;
      break;
  }

  RealVector out(intervals);
  ComplexMatrix mu_t(n, n);
  for (int l = 1; l <= intervals; ++l) {
    mu_t.noalias() = cumulative[l].adjoint() * system.dipole * cumulative[l];
    double density = 0.0;
    switch (objective.kind) {
      case ObjectiveKind::StateTransition: {
        // 2 Im[<f|U_T|i> <i| mu(t) U_T^dag |f>]
        const Complex inner = (objective.initial_state.adjoint() * mu_t * bra)(0);
        density = 2.0 * (overlap * inner).imag();
        break;
      }
      case ObjectiveKind::Observable:
        // 2 Im Tr[U_T^dag theta U_T rho0 mu(t)]
        density = 2.0 * trace_product(contraction, mu_t).imag();
        break;
      case ObjectiveKind::EvolutionOperator:
        // Im Tr[W^dag U_T mu(t)] / (2N)
        density = trace_product(contraction, mu_t).imag() / (2.0 * n);
        break;
    }
    out(l - 1) = dt * density;
  }
  return out;
}

}  // namespace

GradientVector gradient_field_samples(const QuantumSystem& system, const PiecewiseField& field,
                                      const ObjectiveSpec& objective, GradientMode mode,
                                      const PropagationCache& cache) {
  require_dimensions(system, field, &objective);
  GradientVector grad;
  grad.mode = GradientVector::Mode::FieldSamples;
  grad.values = (mode == GradientMode::Exact)
                    ? exact_sample_gradient(system, field, objective, cache)
                    : approximate_sample_gradient(system, field, objective, cache);
  if (objective.penalty_weight > 0.0) {
    grad.values -= 2.0 * objective.penalty_weight * field.grid.dt() * field.samples;
  }
  return grad;
}

GradientVector gradient_field_samples(const QuantumSystem& system, const PiecewiseField& field,
                                      const ObjectiveSpec& objective, GradientMode mode) {
  const PropagationCache cache = propagate_cached(system, field);
  return gradient_field_samples(system, field, objective, mode, cache);
}

GradientVector gradient_spectral_phases(const QuantumSystem& system, const SpectralPhaseField& spec,
                                        const ObjectiveSpec& objective, GradientMode mode,
                                        const PiecewiseField& field,
                                        const PropagationCache& cache) {
  const GradientVector sample_grad = gradient_field_samples(system, field, objective, mode, cache);
  GradientVector grad;
  grad.mode = GradientVector::Mode::SpectralPhases;
  grad.values.resize(spec.frequencies.size());
  for (int m = 0; m < spec.frequencies.size(); ++m) {
    grad.values(m) = sample_grad.values.dot(phase_sensitivity(spec, m).samples);
  }
  return grad;
}

GradientVector gradient_spectral_phases(const QuantumSystem& system, const SpectralPhaseField& spec,
                                        const ObjectiveSpec& objective, GradientMode mode) {
  const PiecewiseField field = synthesize_choice_ii(spec);
  const PropagationCache cache = propagate_cached(system, field);
  return gradient_spectral_phases(system, spec, objective, mode, field, cache);
}

}  // namespace qoc
