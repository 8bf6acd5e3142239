// qoc — command-line front end: single runs, preset constraint sweeps,
// aggregation, and per-experiment report CSVs.

#include "qoc/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

qoc::Scale parse_scale(const std::string& name) {
  if (name == "desk") return qoc::Scale::Desk;
  if (name == "paper") return qoc::Scale::Paper;
  throw CLI::ValidationError("--scale must be desk or paper");
}

int run_single(const std::string& problem_file, const std::string& trace_json,
               const std::string& trace_csv, const std::string& field_csv) {
  // The problem file is a one-point custom sweep spec: problem + optimizer + seed.
  const nlohmann::json doc = nlohmann::json::parse(read_file(problem_file));
  qoc::SweepSpec spec;
  spec.experiment = qoc::ExperimentKind::Custom;
  spec.name = "run";
  spec.constraint_grid = {0.0};
  spec.runs_per_point = 1;
  spec.base_seed = doc.value("seed", 0ULL);
  {
    nlohmann::json sweep_doc;
    sweep_doc["experiment"] = "custom";
    sweep_doc["problem"] = doc.at("problem");
    sweep_doc["optimizer"] = doc.at("optimizer");
    sweep_doc["constraint_grid"] = {0.0};
    sweep_doc["runs_per_point"] = 1;
    sweep_doc["base_seed"] = spec.base_seed;
    spec = qoc::sweep_spec_from_json(sweep_doc.dump());
  }
  spec.validate();

  const std::uint64_t seed = doc.contains("seed")
                                 ? doc["seed"].get<std::uint64_t>()
                                 : qoc::derive_run_seed(spec.base_seed, 0, 0);
  const qoc::ConfiguredRun run = qoc::configure_run(spec, 0, seed);
  const qoc::OptimizationTrace trace = qoc::optimize(run.problem, run.optimizer, run.initial_state);

  std::cout << "converged: " << (trace.converged ? "yes" : "no") << "\n"
            << "termination: " << qoc::termination_reason_name(trace.termination_reason) << "\n"
            << "iterations: " << trace.iterations_used << "\n";
  std::cout.precision(12);
  std::cout << "final J: " << trace.j_history.back() << "\n"
            << "final fluence: " << trace.final_fluence << "\n"
            << "final |grad|: " << trace.final_gradient_norm << "\n";
  if (!trace.failure_message.empty()) std::cout << "failure: " << trace.failure_message << "\n";

  if (!trace_json.empty()) write_file(trace_json, qoc::trace_to_json(trace));
  if (!trace_csv.empty()) {
    std::ofstream out(trace_csv);
    qoc::write_trace_csv(trace, out);
  }
  if (!field_csv.empty()) {
    std::ofstream out(field_csv);
    qoc::write_field_csv(trace.final_field, out);
  }
  return trace.converged ? 0 : 1;
}

int run_sweep_command(const std::string& preset, const std::string& scale_name,
                      const std::string& out_dir, int workers, std::uint64_t base_seed,
                      bool base_seed_set, int runs_override) {
  qoc::SweepSpec spec = qoc::find_preset(preset, parse_scale(scale_name));
  if (workers > 0) spec.parallelism = workers;
  if (base_seed_set) spec.base_seed = base_seed;
  if (runs_override > 0) spec.runs_per_point = runs_override;

  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "spec.json", qoc::sweep_spec_to_json(spec));

  // Stream records append-only as they complete; rewrite in canonical order
  // at the end.
  const fs::path records_path = fs::path(out_dir) / "records.csv";
  std::ofstream stream(records_path);
  qoc::write_records_csv_header(stream);
  long completed = 0;
  const long total = static_cast<long>(spec.constraint_grid.size()) * spec.runs_per_point;
  const auto on_record = [&](const qoc::RunRecord& record) {
    qoc::write_record_csv_row(record, stream);
    stream.flush();
    ++completed;
    if (completed % 50 == 0 || completed == total) {
      std::cerr << "\r" << spec.name << ": " << completed << "/" << total << " runs" << std::flush;
    }
  };
  const std::vector<qoc::RunRecord> records = qoc::run_sweep(spec, on_record);
  std::cerr << "\n";
  stream.close();

  {
    std::ofstream out(records_path);
    qoc::write_records_csv_header(out);
    for (const qoc::RunRecord& record : records) qoc::write_record_csv_row(record, out);
  }
  {
    std::ofstream out(fs::path(out_dir) / "aggregate.csv");
    qoc::write_aggregate_csv(qoc::aggregate(records), out);
  }
  std::cout << "wrote " << records.size() << " records to " << records_path.string() << "\n";
  return 0;
}

int run_aggregate(const std::string& records_file, const std::string& out_file) {
  std::ifstream in(records_file);
  if (!in) throw std::runtime_error("cannot open " + records_file);
  const auto rows = qoc::aggregate(qoc::read_records_csv(in));
  if (out_file.empty()) {
    qoc::write_aggregate_csv(rows, std::cout);
  } else {
    std::ofstream out(out_file);
    qoc::write_aggregate_csv(rows, out);
  }
  return 0;
}

int run_report(const std::string& dir) {
  // Collect records.csv files below dir, aggregate per experiment name.
  std::map<std::string, std::vector<qoc::RunRecord>> by_experiment;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().filename() != "records.csv") continue;
    std::ifstream in(entry.path());
    for (qoc::RunRecord& record : qoc::read_records_csv(in)) {
      by_experiment[record.experiment].push_back(std::move(record));
    }
  }
  if (by_experiment.empty()) {
    std::cerr << "no records.csv found under " << dir << "\n";
    return 1;
  }
  for (const auto& [name, records] : by_experiment) {
    const fs::path out_path = fs::path(dir) / ("aggregate_" + name + ".csv");
    std::ofstream out(out_path);
    qoc::write_aggregate_csv(qoc::aggregate(records), out);
    std::cout << "wrote " << out_path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum optimal control engine and constraint-sweep harness"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "single optimization from a JSON problem file");
  std::string problem_file, trace_json, trace_csv, field_csv;
  run_cmd->add_option("--problem", problem_file, "problem JSON file")->required();
  run_cmd->add_option("--trace-json", trace_json, "write the full trace as JSON");
  run_cmd->add_option("--trace-csv", trace_csv, "write (s, J) pairs as CSV");
  run_cmd->add_option("--field-csv", field_csv, "write the final field as CSV");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a preset constraint sweep");
  std::string preset, scale_name = "desk", out_dir;
  int workers = 0;
  std::uint64_t base_seed = 0;
  int runs_override = 0;
  sweep_cmd->add_option("--preset", preset, "preset name (see `presets`)")->required();
  sweep_cmd->add_option("--scale", scale_name, "desk or paper (default desk)");
  sweep_cmd->add_option("--out", out_dir, "output directory")->required();
  sweep_cmd->add_option("--workers", workers, "worker threads (default: preset)");
  auto* seed_opt = sweep_cmd->add_option("--base-seed", base_seed, "sweep base seed");
  sweep_cmd->add_option("--runs", runs_override, "override runs per grid point");

  auto* presets_cmd = app.add_subcommand("presets", "list built-in sweep presets");
  std::string targets_out;
  presets_cmd->add_option("--targets-out", targets_out,
                          "write the fixed unitary targets as a JSON fixture");

  auto* aggregate_cmd = app.add_subcommand("aggregate", "aggregate a records CSV");
  std::string records_file, aggregate_out;
  aggregate_cmd->add_option("records", records_file, "records.csv path")->required();
  aggregate_cmd->add_option("--out", aggregate_out, "output CSV (default stdout)");

  auto* report_cmd = app.add_subcommand("report", "emit per-experiment aggregate CSVs");
  std::string report_dir;
  report_cmd->add_option("dir", report_dir, "directory holding sweep outputs")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return run_single(problem_file, trace_json, trace_csv, field_csv);
    if (sweep_cmd->parsed()) {
      return run_sweep_command(preset, scale_name, out_dir, workers, base_seed,
                               seed_opt->count() > 0, runs_override);
    }
    if (presets_cmd->parsed()) {
      for (const std::string& name : qoc::preset_names()) std::cout << name << "\n";
      if (!targets_out.empty()) {
        write_file(targets_out, qoc::preset_targets_fixture_json());
        std::cout << "wrote " << targets_out << "\n";
      }
      return 0;
    }
    if (aggregate_cmd->parsed()) return run_aggregate(records_file, aggregate_out);
    if (report_cmd->parsed()) return run_report(report_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
