#include "qoc/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qoc {

namespace {

void require_unit_vector(const ComplexVector& v, const char* who) {
  if (v.size() < 2) throw std::invalid_argument(std::string(who) + ": state dimension must be >= 2");
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(who) + ": state vector is not normalized within 1e-12");
  }
}

}  // namespace

int ObjectiveSpec::dimension() const {
  switch (kind) {
    case ObjectiveKind::StateTransition: return static_cast<int>(initial_state.size());
    case ObjectiveKind::Observable: return static_cast<int>(rho0.rows());
    case ObjectiveKind::EvolutionOperator: return static_cast<int>(target.rows());
  }
  return 0;
}

ObjectiveSpec ObjectiveSpec::bare() const {
  ObjectiveSpec copy = *this;
  copy.penalty_weight = 0.0;
  return copy;
}

ObjectiveSpec state_transition_objective(ComplexVector initial_state, ComplexVector final_state,
                                         double penalty_weight) {
  require_unit_vector(initial_state, "state_transition_objective");
  require_unit_vector(final_state, "state_transition_objective");
  if (initial_state.size() != final_state.size()) {
    throw std::invalid_argument("state_transition_objective: state dimensions differ");
  }
  if (penalty_weight < 0.0) {
    throw std::invalid_argument("state_transition_objective: penalty weight must be >= 0");
  }
  ObjectiveSpec spec;
  spec.kind = ObjectiveKind::StateTransition;
  spec.initial_state = std::move(initial_state);
  spec.final_state = std::move(final_state);
  spec.direction = Direction::Maximize;
  spec.penalty_weight = penalty_weight;
  return spec;
}

ObjectiveSpec observable_objective(ComplexMatrix rho0, ComplexMatrix theta, double penalty_weight) {
  if (rho0.rows() != rho0.cols() || theta.rows() != theta.cols() || rho0.rows() != theta.rows()) {
    throw std::invalid_argument("observable_objective: rho0/theta must be square and same size");
  }
  if (!is_hermitian(rho0, 1e-10) || !is_hermitian(theta, 1e-10)) {
    throw std::invalid_argument("observable_objective: rho0 and theta must be Hermitian");
  }
  if (std::abs(rho0.trace().real() - 1.0) > 1e-10) {
    throw std::invalid_argument("observable_objective: Tr(rho0) must equal 1 within 1e-10");
  }
  const RealVector p = hermitian_eig(rho0).eigenvalues;
  if (p.minCoeff() < -1e-10) {
    throw std::invalid_argument("observable_objective: rho0 must be positive semidefinite");
  }
  if (penalty_weight < 0.0) {
    throw std::invalid_argument("observable_objective: penalty weight must be >= 0");
  }
  ObjectiveSpec spec;
  spec.kind = ObjectiveKind::Observable;
  spec.rho0 = std::move(rho0);
  spec.theta = std::move(theta);
  spec.direction = Direction::Maximize;
  spec.penalty_weight = penalty_weight;
  return spec;
}

ObjectiveSpec observable_objective(const RealVector& rho0_diagonal, const RealVector& theta_diagonal,
                                   double penalty_weight) {
  if (rho0_diagonal.size() != theta_diagonal.size()) {
    throw std::invalid_argument("observable_objective: spectra lengths differ");
  }
  const Eigen::Index n = rho0_diagonal.size();
  ComplexMatrix rho0 = ComplexMatrix::Zero(n, n);
  ComplexMatrix theta = ComplexMatrix::Zero(n, n);
  rho0.diagonal() = rho0_diagonal.cast<Complex>();
  theta.diagonal() = theta_diagonal.cast<Complex>();
  return observable_objective(std::move(rho0), std::move(theta), penalty_weight);
}

ObjectiveSpec evolution_operator_objective(ComplexMatrix target, Direction direction,
                                           double penalty_weight) {
  if (!is_unitary(target, 1e-6)) {
    throw std::invalid_argument("evolution_operator_objective: target is not unitary within 1e-6");
  }
  if (penalty_weight < 0.0) {
    throw std::invalid_argument("evolution_operator_objective: penalty weight must be >= 0");
  }
  ObjectiveSpec spec;
  spec.kind = ObjectiveKind::EvolutionOperator;
  spec.target = std::move(target);
  spec.direction = direction;
  spec.penalty_weight = penalty_weight;
  return spec;
}

double evaluate(const ObjectiveSpec& objective, const ComplexMatrix& u_final,
                const PiecewiseField* field) {
  const int n = objective.dimension();
  if (u_final.rows() != n || u_final.cols() != n) {
    throw std::invalid_argument("evaluate: propagator dimension does not match objective");
  }
  if (!is_unitary(u_final, 1e-6)) {
    throw std::invalid_argument("evaluate: u_final is not unitary within 1e-6");
  }
  double j = 0.0;
  switch (objective.kind) {
    case ObjectiveKind::StateTransition: {
      const Complex overlap =
          (objective.final_state.adjoint() * u_final * objective.initial_state)(0);
      j = std::norm(overlap);
      break;
    }
    case ObjectiveKind::Observable:
      j = (u_final.adjoint() * objective.theta * u_final * objective.rho0).trace().real();
      break;
    case ObjectiveKind::EvolutionOperator:
      j = 0.5 - (objective.target.adjoint() * u_final).trace().real() / (2.0 * n);
      break;
  }
  if (objective.penalty_weight > 0.0) {
    if (field == nullptr) {
      throw std::invalid_argument("evaluate: a field is required when a fluence penalty is set");
    }
    j -= objective.penalty_weight * fluence(*field);
  }
  return j;
}

LandscapeExtrema landscape_extrema(const ObjectiveSpec& objective, int dimension) {
  if (objective.penalty_weight > 0.0) {
    throw std::invalid_argument(
        "landscape_extrema: defined for bare objectives only; strip the penalty first (bare())");
  }
  LandscapeExtrema out;
  switch (objective.kind) {
    case ObjectiveKind::StateTransition:
      out = {0.0, 1.0, {0.0, 1.0}};
      break;
    case ObjectiveKind::EvolutionOperator: {
      out.j_min = 0.0;
      out.j_max = 1.0;
      for (int k = 0; k <= dimension; ++k) {
        out.critical_values.push_back(static_cast<double>(k) / dimension);
      }
      break;
    }
    case ObjectiveKind::Observable: {
      RealVector p = hermitian_eig(objective.rho0).eigenvalues;
      RealVector t = hermitian_eig(objective.theta).eigenvalues;
      const int n = static_cast<int>(p.size());
      // Extremes from sorted pairings (rearrangement): ascending-ascending is
      // the maximum, ascending-descending the minimum.
      std::vector<double> ps(p.data(), p.data() + n);
      std::vector<double> ts(t.data(), t.data() + n);
      std::sort(ps.begin(), ps.end());
      std::sort(ts.begin(), ts.end());
      double max_v = 0.0;
      double min_v = 0.0;
      for (int k = 0; k < n; ++k) {
        max_v += ps[k] * ts[k];
        min_v += ps[k] * ts[n - 1 - k];
      }
      out.j_min = min_v;
      out.j_max = max_v;
      if (n <= 8) {
        std::vector<double> values;
        std::vector<double> perm = ps;  // sorted, so next_permutation covers every ordering
        do {
          double v = 0.0;
          for (int k = 0; k < n; ++k) v += perm[k] * ts[k];
          values.push_back(v);
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::sort(values.begin(), values.end());
        for (double v : values) {
          if (out.critical_values.empty() || v - out.critical_values.back() > 1e-12) {
            out.critical_values.push_back(v);
          }
        }
        // keep the extrema bit-identical with the enumerated list
        out.j_min = out.critical_values.front();
        out.j_max = out.critical_values.back();
      } else {
        out.critical_values = {out.j_min, out.j_max};
      }
      break;
    }
  }
  return out;
}

double default_eta(const LandscapeExtrema& extrema) {
  return 1e-3 * (extrema.j_max - extrema.j_min);
}

bool converged(double j, const LandscapeExtrema& extrema, double eta, Direction direction) {
  if (!(eta > 0.0)) throw std::invalid_argument("converged: eta must be positive");
  if (direction == Direction::Maximize) return j >= extrema.j_max - eta;
  return j <= extrema.j_min + eta;
}

}  // namespace qoc
