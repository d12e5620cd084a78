// balance: anytime MAPF with bandit-driven large neighborhood search.
//
//   balance run     one run, anytime trace as CSV
//   balance sweep   cross product of scenarios, agent counts, algorithms,
//                   budgets and seeds with aggregated costs
//   balance grid    all fixed (heuristic, size) configurations
//   balance analyze selection heatmaps and choice-over-time series
//   balance render  re-emit a map's passability grid

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "balance/benchmark_io.h"
#include "balance/harness.h"
#include "balance/lns.h"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kFileError = 3, kInfeasibleInit = 4, kInternal = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgoFlags {
  int num_exponents = 5;
  double xi = 1000.0;
  std::string prior = "0,0.01,1,100";
  std::optional<int64_t> iterations;
  int pp_restarts = 50;
};

void add_algo_flags(CLI::App* cmd, AlgoFlags& f) {
  cmd->add_option("--E", f.num_exponents, "Number of neighborhood size options (sizes 2^1..2^E)")
      ->check(CLI::Range(1, 30));
  cmd->add_option("--xi", f.xi, "UCB1 exploration constant");
  cmd->add_option("--prior", f.prior, "Thompson prior mu0,lambda0,alpha0,beta0");
  cmd->add_option("--iterations", f.iterations, "Stop after this many iterations instead of the wall clock");
  cmd->add_option("--pp-restarts", f.pp_restarts, "Prioritized planning restarts for the initial solution")
      ->check(CLI::PositiveNumber);
}

balance::NormalGammaPrior prior_of(const AlgoFlags& f) {
  try {
    return balance::parse_prior(f.prior);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path.string());
  return out;
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw FileError("cannot create " + dir + ": " + ec.message());
  return dir;
}

void log_progress(const balance::RunSummary& r, size_t done, size_t total) {
  std::cerr << "[" << done << "/" << total << "] " << r.key.scenario << " m=" << r.key.m << " "
            << r.key.algorithm << " seed=" << r.key.seed << " budget=" << r.key.budget_seconds << "s: ";
  if (r.ok())
    std::cerr << "cost " << r.initial_cost << " -> " << r.final_cost << " (" << r.iterations << " iterations)\n";
  else
    std::cerr << r.status << " " << r.message << "\n";
}

struct SweepFlags {
  std::string map;
  std::vector<std::string> scens;
  std::vector<int> agents;
  std::vector<double> budgets;
  std::vector<uint64_t> seeds{0};
  std::string out_dir = ".";
  int workers = 0;
  bool no_traces = false;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--map", f.map, "Benchmark .map file")->required();
  cmd->add_option("--scen", f.scens, "Benchmark .scen files")->required();
  cmd->add_option("--agents", f.agents, "Agent counts")->required()->delimiter(',');
  cmd->add_option("--budgets", f.budgets, "Wall-clock budgets in seconds")->required()->delimiter(',');
  cmd->add_option("--seeds", f.seeds, "Random seeds")->delimiter(',');
  cmd->add_option("--out-dir", f.out_dir, "Directory for CSV outputs");
  cmd->add_option("--workers", f.workers, "Parallel runs (default: BALANCE_WORKERS or core count)");
  cmd->add_flag("--no-traces", f.no_traces, "Skip the per-iteration trace CSV");
}

balance::ExperimentSpec to_spec(const SweepFlags& f, const AlgoFlags& a) {
  balance::ExperimentSpec spec;
  spec.map_path = f.map;
  spec.scen_paths = f.scens;
  spec.agent_counts = f.agents;
  spec.budgets = f.budgets;
  spec.seeds = f.seeds;
  spec.max_iterations = a.iterations;
  spec.pp_restarts = a.pp_restarts;
  spec.workers = f.workers;
  spec.keep_traces = !f.no_traces;
  return spec;
}

void write_sweep_outputs(const balance::SweepResult& result, const std::filesystem::path& dir,
                         const std::string& prefix, bool traces) {
  if (traces) {
    auto out = open_output(dir / (prefix + "traces.csv"));
    balance::write_records(result.traces, out);
  }
  auto runs = open_output(dir / (prefix + "runs.csv"));
  balance::write_runs(result.runs, runs);
  auto agg = open_output(dir / (prefix + "aggregate.csv"));
  balance::write_aggregates(result.aggregates, agg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anytime multi-agent path finding with bandit-based adaptive LNS"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Solve one instance and print its anytime trace");
  std::string map_path, scen_path, algo_name = "thompson", out_path = "-", fixed_h;
  int agents = 0;
  std::optional<int> fixed_n;
  double budget_s = 60.0;
  uint64_t seed = 0;
  bool validate_each = false;
  bool keep_going = false;
  AlgoFlags run_flags;
  run_cmd->add_option("--map", map_path, "Benchmark .map file")->required();
  run_cmd->add_option("--scen", scen_path, "Benchmark .scen file")->required();
  run_cmd->add_option("--agents", agents, "Number of agents (first m scenario entries)")->required();
  run_cmd->add_option("--budget-s", budget_s, "Wall-clock budget in seconds, initial solution included");
  run_cmd->add_option("--seed", seed, "Random seed");
  run_cmd->add_option("--algo", algo_name, "thompson|ucb1|roulette|random|joint-thompson|fixed")
      ->check(CLI::IsMember({"thompson", "ucb1", "roulette", "random", "joint-thompson", "fixed"}));
  run_cmd->add_option("--fixed-h", fixed_h, "Destroy heuristic for --algo fixed: random|agent|map")
      ->check(CLI::IsMember({"random", "agent", "map"}));
  run_cmd->add_option("--fixed-n", fixed_n, "Neighborhood size for --algo fixed (a power of two)");
  run_cmd->add_option("--out", out_path, "Trace CSV path, - for stdout");
  run_cmd->add_flag("--validate", validate_each, "Validate the plan after every iteration");
  run_cmd->add_flag("--keep-going-at-zero", keep_going, "Do not stop once the sum of delays reaches 0");
  add_algo_flags(run_cmd, run_flags);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment cross product");
  SweepFlags sweep_flags;
  AlgoFlags sweep_algo;
  std::vector<std::string> algos;
  add_sweep_flags(sweep_cmd, sweep_flags);
  add_algo_flags(sweep_cmd, sweep_algo);
  sweep_cmd->add_option("--algos", algos, "Algorithms (fixed:<h>:<n> for fixed configurations)")
      ->required()
      ->delimiter(',');

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "Grid search over every fixed (heuristic, size)");
  SweepFlags grid_flags;
  AlgoFlags grid_algo;
  add_sweep_flags(grid_cmd, grid_flags);
  add_algo_flags(grid_cmd, grid_algo);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Selection heatmaps and choices over time");
  std::vector<std::string> trace_paths;
  double bin_ms = 1000.0;
  std::string analysis_dir = ".";
  analyze_cmd->add_option("--traces", trace_paths, "Trace CSV files")->required();
  analyze_cmd->add_option("--bin-ms", bin_ms, "Time bin width in milliseconds")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--out-dir", analysis_dir, "Directory for heatmap.csv and choices.csv");

  // render
  auto* render_cmd = app.add_subcommand("render", "Print a map's passability grid");
  std::string render_path;
  render_cmd->add_option("--map", render_path, "Benchmark .map file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) {
      if ((algo_name == "fixed") != (fixed_n.has_value() && !fixed_h.empty()))
        throw UsageError("--fixed-h and --fixed-n are required with --algo fixed and only then");
      if (!(budget_s >= 0.0)) throw UsageError("--budget-s must be non-negative");
      balance::Algorithm algo;
      try {
        algo = balance::make_algorithm(algo_name, run_flags.num_exponents, run_flags.xi, prior_of(run_flags),
                                       fixed_h.empty() ? std::nullopt : balance::parse_heuristic(fixed_h),
                                       fixed_n);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      balance::GridMap map;
      std::vector<balance::ScenarioEntry> entries;
      try {
        map = balance::parse_map(balance::read_file(map_path));
        entries = balance::parse_scen(balance::read_file(scen_path));
      } catch (const std::exception& e) {
        throw FileError(e.what());
      }
      std::optional<balance::Instance> instance;
      try {
        instance.emplace(balance::build_instance(map, entries, agents));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      for (const auto& w : balance::check_optimal_lengths(*instance, entries)) std::cerr << "warning: " << w << "\n";

      balance::EngineConfig config = algo.config;
      config.budget = std::chrono::duration<double>(budget_s);
      config.seed = seed;
      config.max_iterations = run_flags.iterations;
      config.pp_restarts = run_flags.pp_restarts;
      config.validate_every_iteration = validate_each;
      config.stop_at_zero_cost = !keep_going;

      balance::RunResult result;
      try {
        result = balance::run(*instance, config);
      } catch (const balance::InitialSolutionError& e) {
        std::cerr << "infeasible initial solution: " << e.what() << "\n";
        return kInfeasibleInit;
      }
      const auto conflicts = balance::validate(result.final_plan);
      if (!conflicts.empty()) {
        std::cerr << "internal error: " << balance::describe(conflicts.front(), map) << "\n";
        return kInternal;
      }
      const balance::RunKey key{balance::file_stem(map_path), balance::file_stem(scen_path), algo.label,
                                agents, seed, budget_s};
      const auto records = balance::to_records(key, result);
      if (out_path == "-") {
        balance::write_records(records, std::cout);
      } else {
        auto out = open_output(out_path);
        balance::write_records(records, out);
      }
      std::cerr << "initial cost " << result.initial_cost << ", final cost " << result.final_cost << " after "
                << result.iterations() << " iterations\n";
      return kOk;
    }

    if (*sweep_cmd) {
      balance::ExperimentSpec spec = to_spec(sweep_flags, sweep_algo);
      const auto prior = prior_of(sweep_algo);
      for (const std::string& name : algos) {
        try {
          if (name.rfind("fixed:", 0) == 0) {
            const size_t sep = name.find(':', 6);
            if (sep == std::string::npos) throw std::invalid_argument("expected fixed:<heuristic>:<size>");
            const auto h = balance::parse_heuristic(name.substr(6, sep - 6));
            if (!h) throw std::invalid_argument("unknown heuristic in '" + name + "'");
            spec.algorithms.push_back(balance::make_algorithm("fixed", sweep_algo.num_exponents, sweep_algo.xi,
                                                              prior, h, std::stoi(name.substr(sep + 1))));
          } else {
            spec.algorithms.push_back(
                balance::make_algorithm(name, sweep_algo.num_exponents, sweep_algo.xi, prior));
          }
        } catch (const std::exception& e) {
          throw UsageError(e.what());
        }
      }
      const auto dir = prepare_dir(sweep_flags.out_dir);
      balance::SweepResult result;
      try {
        result = balance::run_sweep(spec, log_progress);
      } catch (const std::exception& e) {
        throw FileError(e.what());
      }
      write_sweep_outputs(result, dir, "", spec.keep_traces);
      return kOk;
    }

    if (*grid_cmd) {
      const balance::ExperimentSpec spec = to_spec(grid_flags, grid_algo);
      const auto dir = prepare_dir(grid_flags.out_dir);
      balance::GridSearchResult result;
      try {
        result = balance::grid_search(spec, grid_algo.num_exponents, log_progress);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      } catch (const std::exception& e) {
        throw FileError(e.what());
      }
      write_sweep_outputs(result.sweep, dir, "grid_", spec.keep_traces);
      auto best = open_output(dir / "grid_best.csv");
      balance::write_aggregates(result.best, best);
      for (const auto& b : result.best)
        std::cerr << b.map << " m=" << b.m << " budget=" << b.budget_seconds << "s: best " << b.algorithm
                  << " mean cost " << b.mean_cost << "\n";
      return kOk;
    }

    if (*analyze_cmd) {
      std::vector<balance::CsvRecord> records;
      for (const std::string& path : trace_paths) {
        std::ifstream in(path);
        if (!in) throw FileError("cannot open " + path);
        try {
          auto rows = balance::read_records(in);
          records.insert(records.end(), rows.begin(), rows.end());
        } catch (const balance::ParseError& e) {
          throw FileError(path + ": " + e.what());
        }
      }
      const auto analysis = balance::analyze(records, bin_ms);
      const auto dir = prepare_dir(analysis_dir);
      auto heatmap = open_output(dir / "heatmap.csv");
      balance::write_heatmap(analysis.heatmap, heatmap);
      auto choices = open_output(dir / "choices.csv");
      balance::write_choices(analysis.choices, choices);
      return kOk;
    }

    if (*render_cmd) {
      try {
        std::cout << balance::render_map(balance::parse_map(balance::read_file(render_path)));
      } catch (const std::exception& e) {
        throw FileError(e.what());
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFileError;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFileError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
