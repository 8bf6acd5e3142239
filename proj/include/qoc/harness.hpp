// harness.hpp — Seeded batch execution of constraint sweeps, aggregation,
// and result persistence.

#pragma once

#include "qoc/optimizer.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qoc {

enum class ExperimentKind {
  DtSweep,
  VariableCountSweep,
  DurationSweep,
  FluenceSweepChoiceII,
  FluenceSweepChoiceI,
  StepSizeSweep,
  ToleranceSweep,
  Custom,
};

enum class Scale { Paper, Desk };

// How the fixed frequencies of the spectral-phase parameterization are
// chosen: drawn uniformly from the transition band, or the integer ladder
// w_m = m. The free-sample parameterization always draws from the band.
enum class FrequencyMode { TransitionBand, IntegerLadder };

enum class TargetKind { None, W1, W2, RandomSeeded };

// Everything needed to instantiate one optimization run, minus the seed.
struct ProblemTemplate {
  // rotor system
  int dimension = 2;
  double lambda = 1.0;
  double dipole_decay = 0.5;
  double diagonal_dipole = 0.0;
  // objective
  ObjectiveKind kind = ObjectiveKind::StateTransition;
  int initial_level = 0;
  int final_level = 1;
  RealVector rho0_diagonal;  // Observable
  RealVector theta_diagonal;
  TargetKind target = TargetKind::None;  // EvolutionOperator
  std::uint64_t target_seed = 0;
  Direction direction = Direction::Maximize;
  double penalty_weight = 0.0;
  // grid and control parameterization
  double total_time = 1.0;
  int intervals = 1;
  Parameterization parameterization = Parameterization::FieldSamples;
  int components = 20;
  FrequencyMode frequency_mode = FrequencyMode::TransitionBand;
  double envelope_width_fraction = 0.1;  // zeta = fraction * total_time
  double fluence0 = 1.0;
};

struct SweepSpec {
  ExperimentKind experiment = ExperimentKind::Custom;
  std::string name = "custom";
  ProblemTemplate problem;
  std::vector<double> constraint_grid;  // strictly monotone, nonempty
  int runs_per_point = 1;
  std::uint64_t base_seed = 0;
  OptimizerConfig optimizer;
  int parallelism = 1;

  void validate() const;
};

struct RunRecord {
  std::string experiment;
  double constraint_value = 0.0;
  int run_index = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  double final_j = 0.0;
  long iterations = 0;
  double final_fluence = 0.0;
  TerminationReason termination_reason = TerminationReason::MaxIterations;
  double wall_time_seconds = 0.0;
};

struct AggregateRow {
  double constraint_value = 0.0;
  double fraction_success = 0.0;
  double mean_final_j = 0.0;
  std::optional<double> mean_opt_fluence;  // converged runs only; absent if none
  int n_runs = 0;
};

// seed = hash64(base_seed, grid_index, run_index); collision-free across a sweep.
std::uint64_t derive_run_seed(std::uint64_t base_seed, int grid_index, int run_index);

// The built-in experiments. Paper scale carries the full grids and run
// counts of the original studies; Desk scale keeps interior grid points at
// 10-20 runs per point for minutes-scale batches.
std::vector<SweepSpec> preset_experiments(Scale scale);
SweepSpec find_preset(const std::string& name, Scale scale);
std::vector<std::string> preset_names();

// Instantiates the fully-configured problem for one grid point (the sweep's
// constraint knob applied) and the matching optimizer configuration.
struct ConfiguredRun {
  FlowProblem problem;
  OptimizerConfig optimizer;
  RealVector initial_state;
};
ConfiguredRun configure_run(const SweepSpec& spec, int grid_index, std::uint64_t seed);

RunRecord execute_run(const SweepSpec& spec, int grid_index, int run_index);

// Runs every (grid point, run index) pair on spec.parallelism workers.
// Records are deterministic in content and returned in canonical order;
// on_record (if set) is invoked as runs complete, under the collector lock.
std::vector<RunRecord> run_sweep(const SweepSpec& spec,
                                 const std::function<void(const RunRecord&)>& on_record = {});

// Groups by constraint value (ascending). Canonicalizes the fold order, so
// the result is independent of record ordering.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records);

// Records CSV: experiment, constraint_value, run_index, seed, converged,
// final_J, iterations, final_fluence, termination_reason, wall_time_seconds.
void write_records_csv_header(std::ostream& out);
void write_record_csv_row(const RunRecord& record, std::ostream& out);
std::vector<RunRecord> read_records_csv(std::istream& in);

// Aggregate CSV: constraint_value, fraction_success, mean_final_J,
// mean_opt_fluence, n_runs. mean_opt_fluence is left empty when absent.
void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out);

std::string sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const std::string& text);

std::string experiment_name(ExperimentKind kind);

}  // namespace qoc
