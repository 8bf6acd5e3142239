#include "qoc/harness.hpp"

#include "qoc/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qoc {

std::uint64_t derive_run_seed(std::uint64_t base_seed, int grid_index, int run_index) {
  return hash64({base_seed, static_cast<std::uint64_t>(grid_index),
                 static_cast<std::uint64_t>(run_index)});
}

void SweepSpec::validate() const {
  if (constraint_grid.empty()) throw std::invalid_argument("sweep: constraint grid is empty");
  for (std::size_t i = 1; i < constraint_grid.size(); ++i) {
    if (!((constraint_grid[i] > constraint_grid[i - 1]) ==
          (constraint_grid[1] > constraint_grid[0])) ||
        constraint_grid[i] == constraint_grid[i - 1]) {
      throw std::invalid_argument("sweep: constraint grid must be strictly monotone");
    }
  }
  if (runs_per_point < 1) throw std::invalid_argument("sweep: runs_per_point must be >= 1");
  if (parallelism < 1) throw std::invalid_argument("sweep: parallelism must be >= 1");
  optimizer.validate();
}

namespace {

void apply_constraint(ExperimentKind experiment, double value, ProblemTemplate& problem,
                      OptimizerConfig& optimizer) {
  switch (experiment) {
    case ExperimentKind::DtSweep:
      problem.intervals = std::max(1, static_cast<int>(std::lround(problem.total_time / value)));
      break;
    case ExperimentKind::VariableCountSweep:
      problem.components = static_cast<int>(std::lround(value));
      break;
    case ExperimentKind::DurationSweep:
      problem.total_time = value;
      break;
    case ExperimentKind::FluenceSweepChoiceII:
    case ExperimentKind::FluenceSweepChoiceI:
      problem.fluence0 = value;
      break;
    case ExperimentKind::StepSizeSweep:
      optimizer.step_size = value;
      break;
    case ExperimentKind::ToleranceSweep:
      optimizer.tolerance = value;
      break;
    case ExperimentKind::Custom:
      break;  // grid values only label the runs
  }
}

ComplexVector basis_state(int dimension, int level) {
  if (level < 0 || level >= dimension) {
    throw std::invalid_argument("harness: level index outside the system dimension");
  }
  ComplexVector v = ComplexVector::Zero(dimension);
  v(level) = 1.0;
  return v;
}

ObjectiveSpec build_objective(const ProblemTemplate& pt) {
  ObjectiveSpec objective;
  switch (pt.kind) {
    case ObjectiveKind::StateTransition:
      objective = state_transition_objective(basis_state(pt.dimension, pt.initial_level),
                                             basis_state(pt.dimension, pt.final_level),
                                             pt.penalty_weight);
      break;
    case ObjectiveKind::Observable:
      objective = observable_objective(pt.rho0_diagonal, pt.theta_diagonal, pt.penalty_weight);
      break;
    case ObjectiveKind::EvolutionOperator: {
      ComplexMatrix target;
      switch (pt.target) {
        case TargetKind::W1: target = preset_targets().w1; break;
        case TargetKind::W2: target = preset_targets().w2; break;
        case TargetKind::RandomSeeded:
          target = random_unitary_target(pt.dimension, pt.target_seed);
          break;
        case TargetKind::None:
          throw std::invalid_argument("harness: evolution-operator objective needs a target");
      }
      objective = evolution_operator_objective(std::move(target), Direction::Minimize,
                                               pt.penalty_weight);
      break;
    }
  }
  objective.direction = pt.direction;
  return objective;
}

RealVector ladder_frequencies(int components) {
  RealVector w(components);
  for (int m = 0; m < components; ++m) w(m) = m + 1;
  return w;
}

RealVector band_frequencies(const QuantumSystem& system, int components, std::uint64_t seed) {
  const TransitionBounds band = transition_frequency_bounds(system);
  SplitMix64 rng(derive_seed(seed, 0));
  RealVector w(components);
  for (int m = 0; m < components; ++m) w(m) = rng.uniform(band.omega_min, band.omega_max);
  return w;
}

}  // namespace

ConfiguredRun configure_run(const SweepSpec& spec, int grid_index, std::uint64_t seed) {
  if (grid_index < 0 || grid_index >= static_cast<int>(spec.constraint_grid.size())) {
    throw std::invalid_argument("configure_run: grid index out of range");
  }
  ProblemTemplate pt = spec.problem;
  OptimizerConfig optimizer = spec.optimizer;
  apply_constraint(spec.experiment, spec.constraint_grid[grid_index], pt, optimizer);

  ConfiguredRun run;
  run.optimizer = optimizer;
  run.problem.system =
      build_rotor_system(pt.dimension, pt.lambda, pt.dipole_decay, pt.diagonal_dipole);
  run.problem.objective = build_objective(pt);
  run.problem.extrema = landscape_extrema(run.problem.objective.bare(), pt.dimension);
  run.problem.parameterization = pt.parameterization;
  run.problem.grid = make_field_grid(pt.total_time, pt.intervals);
  const double zeta = pt.envelope_width_fraction * pt.total_time;

  if (pt.parameterization == Parameterization::FieldSamples) {
    run.initial_state = init_field_choice_i(run.problem.system, run.problem.grid, pt.components,
                                            zeta, pt.fluence0, seed)
                            .samples;
  } else {
    RealVector frequencies = (pt.frequency_mode == FrequencyMode::IntegerLadder)
                                 ? ladder_frequencies(pt.components)
                                 : band_frequencies(run.problem.system, pt.components, seed);
    run.problem.spectral =
        init_spectral_phases(run.problem.grid, std::move(frequencies), zeta, pt.fluence0, seed);
    run.initial_state = run.problem.spectral->phases;
  }
  return run;
}

RunRecord execute_run(const SweepSpec& spec, int grid_index, int run_index) {
  RunRecord record;
  record.experiment = spec.name;
  record.constraint_value = spec.constraint_grid[grid_index];
  record.run_index = run_index;
  record.seed = derive_run_seed(spec.base_seed, grid_index, run_index);

  const auto start = std::chrono::steady_clock::now();
  try {
    const ConfiguredRun run = configure_run(spec, grid_index, record.seed);
    const OptimizationTrace trace = optimize(run.problem, run.optimizer, run.initial_state);
    record.converged = trace.converged;
    record.final_j = trace.j_history.back();
    record.iterations = trace.iterations_used;
    record.final_fluence = trace.final_fluence;
    record.termination_reason = trace.termination_reason;
  } catch (const std::exception&) {
    // A failed run is recorded, never fatal for the sweep.
    record.converged = false;
    record.final_j = std::numeric_limits<double>::quiet_NaN();
    record.final_fluence = std::numeric_limits<double>::quiet_NaN();
    record.termination_reason = TerminationReason::StepFailure;
  }
  record.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec,
                                 const std::function<void(const RunRecord&)>& on_record) {
  spec.validate();
  const int points = static_cast<int>(spec.constraint_grid.size());
  const long total = static_cast<long>(points) * spec.runs_per_point;
  std::vector<RunRecord> records(total);

  std::atomic<long> next{0};
  std::mutex sink_mutex;
  auto worker = [&]() {
    for (long task = next.fetch_add(1); task < total; task = next.fetch_add(1)) {
      const int grid_index = static_cast<int>(task / spec.runs_per_point);
      const int run_index = static_cast<int>(task % spec.runs_per_point);
      records[task] = execute_run(spec, grid_index, run_index);
      if (on_record) {
        const std::lock_guard<std::mutex> lock(sink_mutex);
        on_record(records[task]);
      }
    }
  };

  const int workers = static_cast<int>(std::min<long>(spec.parallelism, total));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");
  std::map<double, std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : records) groups[r.constraint_value].push_back(&r);

  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (auto& [value, group] : groups) {
    // canonical fold order, so shuffled input aggregates identically
    std::sort(group.begin(), group.end(), [](const RunRecord* a, const RunRecord* b) {
      return a->run_index < b->run_index;
    });
    AggregateRow row;
    row.constraint_value = value;
    row.n_runs = static_cast<int>(group.size());
    long converged = 0;
    double j_sum = 0.0;
    double fluence_sum = 0.0;
    for (const RunRecord* r : group) {
      j_sum += r->final_j;
      if (r->converged) {
        ++converged;
        fluence_sum += r->final_fluence;
      }
    }
    row.fraction_success = static_cast<double>(converged) / row.n_runs;
    row.mean_final_j = j_sum / row.n_runs;
    if (converged > 0) row.mean_opt_fluence = fluence_sum / converged;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_records_csv_header(std::ostream& out) {
  out << "experiment,constraint_value,run_index,seed,converged,final_J,iterations,"
         "final_fluence,termination_reason,wall_time_seconds\n";
}

void write_record_csv_row(const RunRecord& r, std::ostream& out) {
  out.precision(17);
  out << r.experiment << ',' << r.constraint_value << ',' << r.run_index << ',' << r.seed << ','
      << (r.converged ? 1 : 0) << ',' << r.final_j << ',' << r.iterations << ','
      << r.final_fluence << ',' << termination_reason_name(r.termination_reason) << ','
      << r.wall_time_seconds << '\n';
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::vector<RunRecord> records;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("experiment,", 0) == 0) continue;  // header
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10) {
      throw std::runtime_error("read_records_csv: malformed row: " + line);
    }
    RunRecord r;
    r.experiment = fields[0];
    r.constraint_value = std::stod(fields[1]);
    r.run_index = std::stoi(fields[2]);
    r.seed = std::stoull(fields[3]);
    r.converged = fields[4] == "1";
    r.final_j = std::stod(fields[5]);
    r.iterations = std::stol(fields[6]);
    r.final_fluence = std::stod(fields[7]);
    r.termination_reason = termination_reason_from_name(fields[8]);
    r.wall_time_seconds = std::stod(fields[9]);
    records.push_back(std::move(r));
  }
  return records;
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
  out.precision(17);
  out << "constraint_value,fraction_success,mean_final_J,mean_opt_fluence,n_runs\n";
  for (const AggregateRow& row : rows) {
    out << row.constraint_value << ',' << row.fraction_success << ',' << row.mean_final_j << ',';
    if (row.mean_opt_fluence) out << *row.mean_opt_fluence;
    out << ',' << row.n_runs << '\n';
  }
}

// ---------------------------------------------------------------------------
// presets

namespace {

std::vector<double> dt_grid(Scale scale) {
  // realized as L = round(T / dt); spans L = 511 down to 80 for T = 50
  const std::vector<int> paper_l = {511, 463, 415, 367, 335, 303, 271, 239,
                                    223, 207, 191, 175, 159, 143, 127, 111, 95, 80};
  const std::vector<int> desk_l = {511, 415, 319, 223, 151, 80};
  std::vector<double> grid;
  for (int l : (scale == Scale::Paper ? paper_l : desk_l)) grid.push_back(50.0 / l);
  return grid;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = lo + (hi - lo) * i / (count - 1);
  return grid;
}

OptimizerConfig adaptive_defaults() {
  OptimizerConfig config;
  config.integrator = Integrator::RK45Adaptive;
  config.tolerance = 1e-8;
  config.max_iterations = 50000;
  config.max_s = 1e6;
  return config;
}

ProblemTemplate observable_rotor6_problem() {
  ProblemTemplate pt;
  pt.dimension = 6;
  pt.lambda = 1.0;
  pt.dipole_decay = 0.5;
  pt.kind = ObjectiveKind::Observable;
  pt.rho0_diagonal = RealVector::Zero(6);
  pt.rho0_diagonal(0) = 0.6;
  pt.rho0_diagonal(1) = 0.4;
  pt.theta_diagonal = RealVector::Zero(6);
  pt.theta_diagonal(3) = 0.1;
  pt.theta_diagonal(4) = 0.2;
  pt.theta_diagonal(5) = 0.7;
  pt.direction = Direction::Maximize;
  pt.total_time = 50.0;
  pt.intervals = 511;
  pt.parameterization = Parameterization::FieldSamples;
  pt.components = 20;
  pt.fluence0 = 10.0;
  return pt;
}

ProblemTemplate transition_rotor4_problem() {
  ProblemTemplate pt;
  pt.dimension = 4;
  pt.lambda = 1.0;
  pt.dipole_decay = 0.9;
  pt.kind = ObjectiveKind::StateTransition;
  pt.initial_level = 0;
  pt.final_level = 3;
  pt.direction = Direction::Maximize;
  pt.total_time = 50.0;
  pt.intervals = 1023;
  pt.fluence0 = 1e3;
  return pt;
}

ProblemTemplate duration_problem(TargetKind target) {
  ProblemTemplate pt;
  pt.dimension = 5;
  pt.lambda = 1.0;
  pt.dipole_decay = 0.9;
  pt.diagonal_dipole = 1.0;  // Tr(mu) != 0, required for evolution-operator control
  pt.kind = ObjectiveKind::EvolutionOperator;
  pt.target = target;
  pt.direction = Direction::Minimize;
  pt.total_time = 4.0;
  pt.intervals = 128;
  pt.parameterization = Parameterization::FieldSamples;
  pt.components = 20;
  pt.fluence0 = 10.0;
  return pt;
}

ProblemTemplate transition_rotor6_problem() {
  ProblemTemplate pt;
  pt.dimension = 6;
  pt.lambda = 1.0;
  pt.dipole_decay = 0.5;
  pt.kind = ObjectiveKind::StateTransition;
  pt.initial_level = 0;
  pt.final_level = 5;
  pt.direction = Direction::Maximize;
  pt.total_time = 50.0;
  pt.intervals = 511;
  pt.parameterization = Parameterization::FieldSamples;
  pt.components = 20;
  pt.fluence0 = 10.0;
  return pt;
}

SweepSpec make_spec(ExperimentKind kind, std::string name, ProblemTemplate problem,
                    std::vector<double> grid, int runs, OptimizerConfig optimizer) {
  SweepSpec spec;
  spec.experiment = kind;
  spec.name = std::move(name);
  spec.problem = std::move(problem);
  spec.constraint_grid = std::move(grid);
  spec.runs_per_point = runs;
  spec.base_seed = 20240715;
  spec.optimizer = std::move(optimizer);
  spec.parallelism = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return spec;
}

}  // namespace

std::vector<SweepSpec> preset_experiments(Scale scale) {
  const bool paper = scale == Scale::Paper;
  const int runs_big = paper ? 1000 : 20;
  std::vector<SweepSpec> presets;

  // Time-discretization sweep on the observable problem.
  presets.push_back(make_spec(ExperimentKind::DtSweep, "dt", observable_rotor6_problem(),
                              dt_grid(scale), runs_big, adaptive_defaults()));

  // Number of spectral-phase variables.
  {
    ProblemTemplate pt = transition_rotor4_problem();
    pt.parameterization = Parameterization::SpectralPhases;
    pt.frequency_mode = FrequencyMode::IntegerLadder;
    pt.components = 16;
    std::vector<double> grid;
    if (paper) {
      for (int m = 3; m <= 16; ++m) grid.push_back(m);
    } else {
      grid = {3, 4, 5, 6, 8, 10, 12, 16};
    }
    presets.push_back(make_spec(ExperimentKind::VariableCountSweep, "variables", pt,
                                std::move(grid), runs_big, adaptive_defaults()));
  }

  // Pulse duration, one sweep per preset target.
  for (TargetKind target : {TargetKind::W1, TargetKind::W2}) {
    std::vector<double> grid =
        paper ? linspace(1.0, 4.0, 31)
              : std::vector<double>{1.0, 1.5, 2.0, 2.3, 2.45, 2.6, 2.8, 3.1, 3.5, 4.0};
    presets.push_back(make_spec(ExperimentKind::DurationSweep,
                                target == TargetKind::W1 ? "duration-w1" : "duration-w2",
                                duration_problem(target), std::move(grid), paper ? 100 : 20,
                                adaptive_defaults()));
  }

  // Initial fluence under the fluence-locked spectral parameterization.
  {
    ProblemTemplate pt = transition_rotor4_problem();
    pt.parameterization = Parameterization::SpectralPhases;
    pt.frequency_mode = FrequencyMode::IntegerLadder;
    pt.components = 16;
    std::vector<double> grid = paper
        ? std::vector<double>{0.5, 1.0, 2.0, 3.0, 5.0, 7.0, 10.0, 15.0, 20.0, 30.0, 40.0, 50.0}
        : std::vector<double>{0.5, 2.0, 10.0, 30.0, 50.0};
    presets.push_back(make_spec(ExperimentKind::FluenceSweepChoiceII, "fluence-ii", pt,
                                std::move(grid), runs_big, adaptive_defaults()));
  }

  // Initial fluence with freely varying samples (logarithmic grid).
  {
    ProblemTemplate pt = transition_rotor4_problem();
    pt.parameterization = Parameterization::FieldSamples;
    pt.components = 20;
    std::vector<double> grid;
    if (paper) {
      for (int e = -12; e <= 6; ++e) grid.push_back(std::pow(10.0, 0.5 * e));
    } else {
      grid = {1e-4, 1e-2, 1.0, 1e2};
    }
    presets.push_back(make_spec(ExperimentKind::FluenceSweepChoiceI, "fluence-i", pt,
                                std::move(grid), paper ? 100 : 10, adaptive_defaults()));
  }

  // Fixed step size, one sweep per integrator.
  for (Integrator integrator : {Integrator::Euler, Integrator::RK4Fixed}) {
    OptimizerConfig config;
    config.integrator = integrator;
    config.step_size = 0.1;  // overwritten by the constraint
    config.max_iterations = 50000;
    config.max_s = 300.0;
    std::vector<double> grid =
        paper ? std::vector<double>{0.01, 0.02, 0.03, 0.05, 0.07, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5}
              : std::vector<double>{0.01, 0.05, 0.1, 0.2, 0.3, 0.5};
    presets.push_back(make_spec(ExperimentKind::StepSizeSweep,
                                integrator == Integrator::Euler ? "step-euler" : "step-rk4",
                                transition_rotor6_problem(), std::move(grid), runs_big, config));
  }

  // Adaptive error tolerance.
  {
    OptimizerConfig config = adaptive_defaults();
    config.tolerance = 1e-3;  // overwritten by the constraint
    config.max_s = 300.0;
    std::vector<double> grid =
        paper ? std::vector<double>{1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1}
              : std::vector<double>{1e-3, 5e-3, 2e-2, 1e-1};
    presets.push_back(make_spec(ExperimentKind::ToleranceSweep, "tolerance",
                                transition_rotor6_problem(), std::move(grid), runs_big, config));
  }

  return presets;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const SweepSpec& spec : preset_experiments(Scale::Desk)) names.push_back(spec.name);
  return names;
}

SweepSpec find_preset(const std::string& name, Scale scale) {
  for (SweepSpec& spec : preset_experiments(scale)) {
    if (spec.name == name) return std::move(spec);
  }
  throw std::invalid_argument("unknown preset: " + name);
}

// ---------------------------------------------------------------------------
// JSON round-trip

namespace {

template <typename T>
std::string enum_to_name(T value, const std::vector<std::pair<T, const char*>>& table) {
  for (const auto& [v, n] : table) {
    if (v == value) return n;
  }
  throw std::invalid_argument("unmapped enum value");
}

template <typename T>
T enum_from_name(const std::string& name, const std::vector<std::pair<T, const char*>>& table) {
  for (const auto& [v, n] : table) {
    if (name == n) return v;
  }
  throw std::invalid_argument("unknown name: " + name);
}

const std::vector<std::pair<ExperimentKind, const char*>> kExperimentNames = {
    {ExperimentKind::DtSweep, "dt_sweep"},
    {ExperimentKind::VariableCountSweep, "variable_count_sweep"},
    {ExperimentKind::DurationSweep, "duration_sweep"},
    {ExperimentKind::FluenceSweepChoiceII, "fluence_sweep_choice_ii"},
    {ExperimentKind::FluenceSweepChoiceI, "fluence_sweep_choice_i"},
    {ExperimentKind::StepSizeSweep, "step_size_sweep"},
    {ExperimentKind::ToleranceSweep, "tolerance_sweep"},
    {ExperimentKind::Custom, "custom"}};

const std::vector<std::pair<ObjectiveKind, const char*>> kObjectiveNames = {
    {ObjectiveKind::StateTransition, "state_transition"},
    {ObjectiveKind::Observable, "observable"},
    {ObjectiveKind::EvolutionOperator, "evolution_operator"}};

const std::vector<std::pair<Direction, const char*>> kDirectionNames = {
    {Direction::Maximize, "maximize"}, {Direction::Minimize, "minimize"}};

const std::vector<std::pair<Parameterization, const char*>> kParameterizationNames = {
    {Parameterization::FieldSamples, "field_samples"},
    {Parameterization::SpectralPhases, "spectral_phases"}};

const std::vector<std::pair<FrequencyMode, const char*>> kFrequencyModeNames = {
    {FrequencyMode::TransitionBand, "transition_band"},
    {FrequencyMode::IntegerLadder, "integer_ladder"}};

const std::vector<std::pair<TargetKind, const char*>> kTargetNames = {
    {TargetKind::None, "none"},
    {TargetKind::W1, "w1"},
    {TargetKind::W2, "w2"},
    {TargetKind::RandomSeeded, "random_seeded"}};

const std::vector<std::pair<Integrator, const char*>> kIntegratorNames = {
    {Integrator::Euler, "euler"},
    {Integrator::RK4Fixed, "rk4"},
    {Integrator::RK45Adaptive, "rk45"}};

const std::vector<std::pair<GradientMode, const char*>> kGradientModeNames = {
    {GradientMode::Approximate, "approximate"}, {GradientMode::Exact, "exact"}};

nlohmann::json optimizer_to_json(const OptimizerConfig& config) {
  nlohmann::json doc;
  doc["integrator"] = enum_to_name(config.integrator, kIntegratorNames);
  if (config.gamma) doc["gamma"] = *config.gamma;
  if (config.step_size) doc["step_size"] = *config.step_size;
  if (config.tolerance) doc["tolerance"] = *config.tolerance;
  if (config.eta) doc["eta"] = *config.eta;
  doc["max_iterations"] = config.max_iterations;
  if (std::isfinite(config.max_s)) doc["max_s"] = config.max_s;
  doc["gradient_mode"] = enum_to_name(config.gradient_mode, kGradientModeNames);
  return doc;
}

OptimizerConfig optimizer_from_json(const nlohmann::json& doc) {
  OptimizerConfig config;
  config.integrator = enum_from_name<Integrator>(doc.at("integrator"), kIntegratorNames);
  if (doc.contains("gamma")) config.gamma = doc["gamma"].get<double>();
  if (doc.contains("step_size")) config.step_size = doc["step_size"].get<double>();
  if (doc.contains("tolerance")) config.tolerance = doc["tolerance"].get<double>();
  if (doc.contains("eta")) config.eta = doc["eta"].get<double>();
  if (doc.contains("max_iterations")) config.max_iterations = doc["max_iterations"].get<long>();
  if (doc.contains("max_s")) config.max_s = doc["max_s"].get<double>();
  if (doc.contains("gradient_mode")) {
    config.gradient_mode = enum_from_name<GradientMode>(doc["gradient_mode"], kGradientModeNames);
  }
  return config;
}

nlohmann::json problem_to_json(const ProblemTemplate& pt) {
  nlohmann::json doc;
  doc["system"] = {{"dimension", pt.dimension},
                   {"lambda", pt.lambda},
                   {"dipole_decay", pt.dipole_decay},
                   {"diagonal_dipole", pt.diagonal_dipole}};
  nlohmann::json objective;
  objective["kind"] = enum_to_name(pt.kind, kObjectiveNames);
  objective["direction"] = enum_to_name(pt.direction, kDirectionNames);
  objective["penalty_weight"] = pt.penalty_weight;
  switch (pt.kind) {
    case ObjectiveKind::StateTransition:
      objective["initial_level"] = pt.initial_level;
      objective["final_level"] = pt.final_level;
      break;
    case ObjectiveKind::Observable:
      objective["rho0_diagonal"] =
          std::vector<double>(pt.rho0_diagonal.data(), pt.rho0_diagonal.data() + pt.rho0_diagonal.size());
      objective["theta_diagonal"] = std::vector<double>(
          pt.theta_diagonal.data(), pt.theta_diagonal.data() + pt.theta_diagonal.size());
      break;
    case ObjectiveKind::EvolutionOperator:
      objective["target"] = enum_to_name(pt.target, kTargetNames);
      objective["target_seed"] = pt.target_seed;
      break;
  }
  doc["objective"] = std::move(objective);
  doc["grid"] = {{"total_time", pt.total_time}, {"intervals", pt.intervals}};
  doc["control"] = {{"parameterization", enum_to_name(pt.parameterization, kParameterizationNames)},
                    {"components", pt.components},
                    {"frequency_mode", enum_to_name(pt.frequency_mode, kFrequencyModeNames)},
                    {"envelope_width_fraction", pt.envelope_width_fraction},
                    {"fluence0", pt.fluence0}};
  return doc;
}

ProblemTemplate problem_from_json(const nlohmann::json& doc) {
  ProblemTemplate pt;
  const auto& system = doc.at("system");
  pt.dimension = system.at("dimension").get<int>();
  pt.lambda = system.value("lambda", 1.0);
  pt.dipole_decay = system.at("dipole_decay").get<double>();
  pt.diagonal_dipole = system.value("diagonal_dipole", 0.0);
  const auto& objective = doc.at("objective");
  pt.kind = enum_from_name<ObjectiveKind>(objective.at("kind"), kObjectiveNames);
  pt.direction = enum_from_name<Direction>(
      objective.value("direction",
                      pt.kind == ObjectiveKind::EvolutionOperator ? "minimize" : "maximize"),
      kDirectionNames);
  pt.penalty_weight = objective.value("penalty_weight", 0.0);
  switch (pt.kind) {
    case ObjectiveKind::StateTransition:
      pt.initial_level = objective.at("initial_level").get<int>();
      pt.final_level = objective.at("final_level").get<int>();
      break;
    case ObjectiveKind::Observable: {
      const auto rho = objective.at("rho0_diagonal").get<std::vector<double>>();
      const auto theta = objective.at("theta_diagonal").get<std::vector<double>>();
      pt.rho0_diagonal = Eigen::Map<const RealVector>(rho.data(), rho.size());
      pt.theta_diagonal = Eigen::Map<const RealVector>(theta.data(), theta.size());
      break;
    }
    case ObjectiveKind::EvolutionOperator:
      pt.target = enum_from_name<TargetKind>(objective.at("target"), kTargetNames);
      pt.target_seed = objective.value("target_seed", 0ULL);
      break;
  }
  const auto& grid = doc.at("grid");
  pt.total_time = grid.at("total_time").get<double>();
  pt.intervals = grid.at("intervals").get<int>();
  const auto& control = doc.at("control");
  pt.parameterization = enum_from_name<Parameterization>(control.at("parameterization"),
                                                         kParameterizationNames);
  pt.components = control.at("components").get<int>();
  pt.frequency_mode = enum_from_name<FrequencyMode>(
      control.value("frequency_mode", "transition_band"), kFrequencyModeNames);
  pt.envelope_width_fraction = control.value("envelope_width_fraction", 0.1);
  pt.fluence0 = control.at("fluence0").get<double>();
  return pt;
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  return enum_to_name(kind, kExperimentNames);
}

std::string sweep_spec_to_json(const SweepSpec& spec) {
  nlohmann::json doc;
  doc["experiment"] = enum_to_name(spec.experiment, kExperimentNames);
  doc["name"] = spec.name;
  doc["problem"] = problem_to_json(spec.problem);
  doc["constraint_grid"] = spec.constraint_grid;
  doc["runs_per_point"] = spec.runs_per_point;
  doc["base_seed"] = spec.base_seed;
  doc["optimizer"] = optimizer_to_json(spec.optimizer);
  doc["parallelism"] = spec.parallelism;
  return doc.dump(2) + "\n";
}

SweepSpec sweep_spec_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  SweepSpec spec;
  spec.experiment = enum_from_name<ExperimentKind>(doc.at("experiment"), kExperimentNames);
  spec.name = doc.value("name", experiment_name(spec.experiment));
  spec.problem = problem_from_json(doc.at("problem"));
  spec.constraint_grid = doc.at("constraint_grid").get<std::vector<double>>();
  spec.runs_per_point = doc.at("runs_per_point").get<int>();
  spec.base_seed = doc.value("base_seed", 0ULL);
  spec.optimizer = optimizer_from_json(doc.at("optimizer"));
  spec.parallelism = doc.value("parallelism", 1);
  return spec;
}

}  // namespace qoc
