#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "balance/benchmark_io.h"
#include "balance/lns.h"

namespace balance {

/// A named solver configuration: everything in EngineConfig except the
/// budget, seed and test-mode settings, which the experiment supplies.
struct Algorithm {
  std::string label;
  EngineConfig config;
};

/// Builds an algorithm from its CLI name: thompson, ucb1, roulette, random,
/// joint-thompson or fixed (which needs `fixed_heuristic` and `fixed_size`).
Algorithm make_algorithm(const std::string& name, int num_exponents, double xi,
                         const NormalGammaPrior& prior, std::optional<HeuristicKind> fixed_heuristic = {},
                         std::optional<int> fixed_size = {});

/// Fixed configuration labelled "fixed-<heuristic>-<N>".
Algorithm fixed_algorithm(HeuristicKind heuristic, int exponent, int num_exponents);

/// Exponent e with 2^e == size, or nothing if size is not a power of two >= 2.
std::optional<int> exponent_of(int size);

/// "mu0,lambda0,alpha0,beta0".
NormalGammaPrior parse_prior(const std::string& text);

struct RunKey {
  std::string map;
  std::string scenario;
  std::string algorithm;
  int m = 0;
  uint64_t seed = 0;
  double budget_seconds = 0.0;
};

/// Trace rows followed by one "summary" row (iteration = iterations run,
/// reward = total improvement, cost = final cost).
std::vector<CsvRecord> to_records(const RunKey& key, const RunResult& result);

struct RunSummary {
  RunKey key;
  /// "ok", "init_failed" or "error".
  std::string status = "ok";
  std::string message;
  int64_t iterations = 0;
  double init_ms = 0.0;
  double elapsed_ms = 0.0;
  int64_t initial_cost = 0;
  int64_t final_cost = 0;
  int64_t conflicts = 0;
  bool trace_monotone = true;
  bool paths_well_formed = true;
  std::vector<std::vector<int64_t>> selection_counts;

  bool ok() const { return status == "ok"; }
};

struct Aggregate {
  std::string map;
  std::string algorithm;
  int m = 0;
  double budget_seconds = 0.0;
  int runs = 0;
  int failed = 0;
  double mean_cost = 0.0;
  double ci95_half_width = 0.0;
};

struct ExperimentSpec {
  std::string map_path;
  std::vector<std::string> scen_paths;
  std::vector<int> agent_counts;
  std::vector<Algorithm> algorithms;
  std::vector<double> budgets;
  std::vector<uint64_t> seeds;
  /// Test mode: iteration-count budget instead of wall clock.
  std::optional<int64_t> max_iterations;
  int pp_restarts = 50;
  /// 0 selects BALANCE_WORKERS or the hardware core count.
  int workers = 0;
  bool keep_traces = true;
};

struct SweepResult {
  std::vector<RunSummary> runs;
  std::vector<CsvRecord> traces;
  std::vector<Aggregate> aggregates;
};

/// Sample mean and 95% Student-t confidence half-width; the half-width is 0
/// for fewer than two values or a constant sample.
std::pair<double, double> mean_ci95(std::span<const double> values);

/// Worker threads for sweeps: `requested` if positive, else the
/// BALANCE_WORKERS environment variable, else the hardware core count.
int resolve_workers(int requested);

/// Executes one run and summarizes it; never throws for solver failures.
RunSummary execute_run(const Instance& instance, const RunKey& key, EngineConfig config,
                       std::vector<CsvRecord>* trace_out = nullptr);

using ProgressFn = std::function<void(const RunSummary&, size_t done, size_t total)>;

/// Runs the cross product scen x m x algorithm x budget x seed (in that
/// nesting order) and aggregates final costs per (map, algorithm, m, budget)
/// over successful runs.
SweepResult run_sweep(const ExperimentSpec& spec, const ProgressFn& progress = {});

std::vector<Aggregate> aggregate(const std::vector<RunSummary>& runs);

struct GridSearchResult {
  SweepResult sweep;
  /// Best fixed configuration per (map, m, budget); ties go to the smaller N.
  std::vector<Aggregate> best;
};

/// Runs every fixed (H, 2^e) for e in 1..E; `spec.algorithms` is replaced.
GridSearchResult grid_search(ExperimentSpec spec, int num_exponents, const ProgressFn& progress = {});

void write_runs(const std::vector<RunSummary>& runs, std::ostream& out);
void write_aggregates(const std::vector<Aggregate>& aggregates, std::ostream& out);

/// Relative frequency of each (H, N) within one run group.
struct HeatmapCell {
  std::string map;
  std::string algorithm;
  int m = 0;
  double budget_seconds = 0.0;
  std::string heuristic;
  int neighborhood_size = 0;
  int64_t count = 0;
  double frequency = 0.0;
};

/// Selection frequency of one heuristic or one size within a time bin.
struct ChoiceBin {
  std::string map;
  std::string algorithm;
  int m = 0;
  double budget_seconds = 0.0;
  double bin_start_ms = 0.0;
  std::string dimension;  // "heuristic" or "neighborhood_size"
  std::string value;
  int64_t count = 0;
  double frequency = 0.0;
};

struct Analysis {
  std::vector<HeatmapCell> heatmap;
  std::vector<ChoiceBin> choices;
};

/// Groups iteration rows (init and summary rows excluded) by (map,
/// algorithm, m, budget). The heatmap covers all 3 x E cells, E being the
/// largest exponent observed in the group.
Analysis analyze(const std::vector<CsvRecord>& records, double bin_ms);

void write_heatmap(const std::vector<HeatmapCell>& cells, std::ostream& out);
void write_choices(const std::vector<ChoiceBin>& bins, std::ostream& out);

/// Base name without directory and extension.
std::string file_stem(const std::string& path);

}  // namespace balance
