// objective.hpp — Control objectives, their landscape extrema and critical
// values, and the convergence test.

#pragma once

#include "qoc/field.hpp"
#include "qoc/numerics.hpp"

#include <vector>

namespace qoc {

enum class ObjectiveKind { StateTransition, Observable, EvolutionOperator };
enum class Direction { Maximize, Minimize };

// One of:
//   StateTransition    J = |<f| U_T |i>|^2
//   Observable         J = Tr(U_T^dag theta U_T rho0)
//   EvolutionOperator  J = 1/2 - Re Tr(W^dag U_T) / (2N)
// optionally minus penalty_weight * fluence.
struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::StateTransition;
  ComplexVector initial_state;  // StateTransition
  ComplexVector final_state;    // StateTransition
  ComplexMatrix rho0;           // Observable
  ComplexMatrix theta;          // Observable
  ComplexMatrix target;         // EvolutionOperator
  Direction direction = Direction::Maximize;
  double penalty_weight = 0.0;

  int dimension() const;
  ObjectiveSpec bare() const;  // same objective with the fluence penalty stripped
};

ObjectiveSpec state_transition_objective(ComplexVector initial_state, ComplexVector final_state,
                                         double penalty_weight = 0.0);
ObjectiveSpec observable_objective(ComplexMatrix rho0, ComplexMatrix theta,
                                   double penalty_weight = 0.0);
// Spectra diagonal in the h0 eigenbasis (the usual convention here).
ObjectiveSpec observable_objective(const RealVector& rho0_diagonal,
                                   const RealVector& theta_diagonal, double penalty_weight = 0.0);
ObjectiveSpec evolution_operator_objective(ComplexMatrix target,
                                           Direction direction = Direction::Minimize,
                                           double penalty_weight = 0.0);

// field is required iff penalty_weight > 0.
double evaluate(const ObjectiveSpec& objective, const ComplexMatrix& u_final,
                const PiecewiseField* field = nullptr);

struct LandscapeExtrema {
  double j_min = 0.0;
  double j_max = 0.0;
  std::vector<double> critical_values;  // ascending, includes j_min and j_max
};

// Critical objective values of the bare landscape. For the observable kind
// these come from all pairings of the rho0 spectrum against the theta
// spectrum; enumeration is exhaustive for N <= 8, sorted-pairing extremes
// only above that. Throws when a penalty is present.
LandscapeExtrema landscape_extrema(const ObjectiveSpec& objective, int dimension);

// 0.001 * (j_max - j_min)
double default_eta(const LandscapeExtrema& extrema);

// J >= j_max - eta (maximize) or J <= j_min + eta (minimize)
bool converged(double j, const LandscapeExtrema& extrema, double eta, Direction direction);

}  // namespace qoc
