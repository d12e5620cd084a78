#include "balance/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include <boost/math/distributions/students_t.hpp>

namespace balance {

std::optional<int> exponent_of(int size) {
  if (size < 2 || (size & (size - 1)) != 0) return std::nullopt;
  int e = 0;
  while ((1 << e) < size) ++e;
  return e;
}

Algorithm fixed_algorithm(HeuristicKind heuristic, int exponent, int num_exponents) {
  Algorithm algo;
  algo.config.scheme = SchemeKind::kFixed;
  algo.config.num_exponents = num_exponents;
  algo.config.fixed = {heuristic, exponent};
  algo.label = "fixed-" + std::string(to_string(heuristic)) + "-" + std::to_string(1 << exponent);
  return algo;
}

Algorithm make_algorithm(const std::string& name, int num_exponents, double xi,
                         const NormalGammaPrior& prior, std::optional<HeuristicKind> fixed_heuristic,
                         std::optional<int> fixed_size) {
  Algorithm algo;
  algo.label = name;
  algo.config.num_exponents = num_exponents;
  if (name == "thompson") {
    algo.config.policy = ThompsonPolicy{prior};
  } else if (name == "ucb1") {
    algo.config.policy = Ucb1Policy{xi};
  } else if (name == "roulette") {
    algo.config.policy = RoulettePolicy{};
  } else if (name == "random") {
    algo.config.policy = UniformPolicy{};
  } else if (name == "joint-thompson") {
    algo.config.policy = ThompsonPolicy{prior};
    algo.config.scheme = SchemeKind::kJoint;
  } else if (name == "fixed") {
    if (!fixed_heuristic || !fixed_size)
      throw std::invalid_argument("algorithm 'fixed' needs a heuristic and a neighborhood size");
    const auto e = exponent_of(*fixed_size);
    if (!e || *e > num_exponents)
      throw std::invalid_argument("fixed neighborhood size must be one of 2^1..2^E");
    return fixed_algorithm(*fixed_heuristic, *e, num_exponents);
  } else {
    throw std::invalid_argument("unknown algorithm '" + name + "'");
  }
  if (name != "fixed" && (fixed_heuristic || fixed_size))
    throw std::invalid_argument("fixed heuristic/size only apply to algorithm 'fixed'");
  check_config(algo.config);
  return algo;
}

NormalGammaPrior parse_prior(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("bad prior value '" + item + "'");
    values.push_back(v);
  }
  if (values.size() != 4) throw std::invalid_argument("prior needs mu0,lambda0,alpha0,beta0");
  NormalGammaPrior prior{values[0], values[1], values[2], values[3]};
  check_policy(ThompsonPolicy{prior});
  return prior;
}

std::string file_stem(const std::string& path) {
  const size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base.resize(dot);
  return base;
}

std::vector<CsvRecord> to_records(const RunKey& key, const RunResult& result) {
  std::vector<CsvRecord> records;
  records.reserve(result.trace.size() + 1);
  auto base = [&] {
    CsvRecord r;
    r.map = key.map;
    r.scenario = key.scenario;
    r.algorithm = key.algorithm;
    r.m = key.m;
    r.seed = static_cast<long>(key.seed);
    r.budget_seconds = key.budget_seconds;
    return r;
  };
  for (const TraceEntry& t : result.trace) {
    CsvRecord r = base();
    r.iteration = t.iteration;
    r.elapsed_ms = t.elapsed_ms;
    r.heuristic = t.heuristic ? std::string(to_string(*t.heuristic)) : "init";
    r.neighborhood_size = t.neighborhood_size;
    r.reward = t.reward;
    r.cost = t.cost;
    records.push_back(std::move(r));
  }
  CsvRecord summary = base();
  summary.iteration = result.iterations();
  summary.elapsed_ms = result.trace.empty() ? 0.0 : result.trace.back().elapsed_ms;
  summary.heuristic = "summary";
  summary.reward = result.initial_cost - result.final_cost;
  summary.cost = result.final_cost;
  records.push_back(std::move(summary));
  return records;
}

std::pair<double, double> mean_ci95(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) return {mean, 0.0};
  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  return {mean, t * sd / std::sqrt(n)};
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BALANCE_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunSummary execute_run(const Instance& instance, const RunKey& key, EngineConfig config,
                       std::vector<CsvRecord>* trace_out) {
  RunSummary summary;
  summary.key = key;
  try {
    const RunResult result = run(instance, config);
    summary.iterations = result.iterations();
    summary.init_ms = result.init_ms;
    summary.elapsed_ms = result.trace.back().elapsed_ms;
    summary.initial_cost = result.initial_cost;
    summary.final_cost = result.final_cost;
    summary.selection_counts = result.selection_counts;
    summary.conflicts = static_cast<int64_t>(validate(result.final_plan).size());
    for (size_t i = 1; i < result.trace.size(); ++i)
      if (result.trace[i].cost > result.trace[i - 1].cost) summary.trace_monotone = false;
    if (result.trace.back().cost != result.final_cost) summary.trace_monotone = false;
    for (const Agent& a : instance.agents())
      if (!is_well_formed(instance.map(), a, result.final_plan.paths[a.id])) summary.paths_well_formed = false;
    if (trace_out) {
      auto records = to_records(key, result);
      trace_out->insert(trace_out->end(), std::make_move_iterator(records.begin()),
                        std::make_move_iterator(records.end()));
    }
  } catch (const InitialSolutionError& e) {
    summary.status = "init_failed";
    summary.message = e.what();
  } catch (const std::exception& e) {
    summary.status = "error";
    summary.message = e.what();
  }
  return summary;
}

SweepResult run_sweep(const ExperimentSpec& spec, const ProgressFn& progress) {
  const GridMap map = parse_map(read_file(spec.map_path));
  const std::string map_name = file_stem(spec.map_path);

  struct Job {
    size_t instance_slot;
    RunKey key;
    EngineConfig config;
  };
  std::vector<std::optional<Instance>> instances;
  std::vector<std::string> instance_errors;
  std::vector<Job> jobs;
  for (const std::string& scen_path : spec.scen_paths) {
    const auto entries = parse_scen(read_file(scen_path));
    for (int m : spec.agent_counts) {
      const size_t slot = instances.size();
      try {
        instances.emplace_back(build_instance(map, entries, m));
        instance_errors.emplace_back();
      } catch (const std::exception& e) {
        instances.emplace_back(std::nullopt);
        instance_errors.emplace_back(e.what());
      }
      for (const Algorithm& algo : spec.algorithms)
        for (double budget : spec.budgets)
          for (uint64_t seed : spec.seeds) {
            EngineConfig config = algo.config;
            config.budget = std::chrono::duration<double>(budget);
            config.seed = seed;
            config.max_iterations = spec.max_iterations;
            config.pp_restarts = spec.pp_restarts;
            jobs.push_back({slot, {map_name, file_stem(scen_path), algo.label, m, seed, budget}, config});
          }
    }
  }

  SweepResult result;
  result.runs.resize(jobs.size());
  std::vector<std::vector<CsvRecord>> traces(jobs.size());
  std::atomic<size_t> next{0};
  std::mutex progress_mutex;
  size_t done = 0;
  auto worker = [&] {
    for (size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      if (!instances[job.instance_slot]) {
        result.runs[j].key = job.key;
        result.runs[j].status = "error";
        result.runs[j].message = instance_errors[job.instance_slot];
      } else {
        result.runs[j] = execute_run(*instances[job.instance_slot], job.key, job.config,
                                     spec.keep_traces ? &traces[j] : nullptr);
      }
      std::lock_guard lock(progress_mutex);
      ++done;
      if (progress) progress(result.runs[j], done, jobs.size());
    }
  };
  const int workers = std::min<int>(resolve_workers(spec.workers), static_cast<int>(std::max<size_t>(1, jobs.size())));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (auto& t : traces)
    result.traces.insert(result.traces.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  result.aggregates = aggregate(result.runs);
  return result;
}

std::vector<Aggregate> aggregate(const std::vector<RunSummary>& runs) {
  using Key = std::tuple<std::string, std::string, int, double>;
  std::vector<Key> order;
  std::map<Key, std::pair<std::vector<double>, int>> groups;
  for (const RunSummary& r : runs) {
    const Key key{r.key.map, r.key.algorithm, r.key.m, r.key.budget_seconds};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    if (r.ok())
      it->second.first.push_back(static_cast<double>(r.final_cost));
    else
      ++it->second.second;
  }
  std::vector<Aggregate> out;
  for (const Key& key : order) {
    const auto& [costs, failed] = groups[key];
    Aggregate a;
    std::tie(a.map, a.algorithm, a.m, a.budget_seconds) = key;
    a.runs = static_cast<int>(costs.size());
    a.failed = failed;
    std::tie(a.mean_cost, a.ci95_half_width) = mean_ci95(costs);
    out.push_back(std::move(a));
  }
  return out;
}

GridSearchResult grid_search(ExperimentSpec spec, int num_exponents, const ProgressFn& progress) {
  if (num_exponents < 1) throw std::invalid_argument("E must be at least 1");
  spec.algorithms.clear();
  for (int h = 0; h < kNumHeuristics; ++h)
    for (int e = 1; e <= num_exponents; ++e)
      spec.algorithms.push_back(fixed_algorithm(static_cast<HeuristicKind>(h), e, num_exponents));

  GridSearchResult result;
  result.sweep = run_sweep(spec, progress);

  std::map<std::tuple<std::string, int, double>, std::pair<Aggregate, int>> best;
  std::vector<std::tuple<std::string, int, double>> order;
  for (const Aggregate& a : result.sweep.aggregates) {
    if (a.runs == 0) continue;
    // label is fixed-<h>-<N>
    const int size = std::stoi(a.algorithm.substr(a.algorithm.find_last_of('-') + 1));
    const auto key = std::make_tuple(a.map, a.m, a.budget_seconds);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, std::make_pair(a, size));
      order.push_back(key);
    } else if (a.mean_cost < it->second.first.mean_cost ||
               (a.mean_cost == it->second.first.mean_cost && size < it->second.second)) {
      it->second = {a, size};
    }
  }
  for (const auto& key : order) result.best.push_back(best[key].first);
  return result;
}

void write_runs(const std::vector<RunSummary>& runs, std::ostream& out) {
  out << "map,scenario,algorithm,m,seed,budget_seconds,status,iterations,init_ms,elapsed_ms,"
         "initial_cost,final_cost,conflicts,message\n";
  for (const RunSummary& r : runs) {
    out << csv_escape(r.key.map) << ',' << csv_escape(r.key.scenario) << ',' << csv_escape(r.key.algorithm)
        << ',' << r.key.m << ',' << r.key.seed << ',' << format_double(r.key.budget_seconds) << ','
        << r.status << ',' << r.iterations << ',' << format_double(r.init_ms) << ','
        << format_double(r.elapsed_ms) << ',' << r.initial_cost << ',' << r.final_cost << ','
        << r.conflicts << ',' << csv_escape(r.message) << '\n';
  }
  if (!out) throw std::ios_base::failure("failed writing run summaries");
}

void write_aggregates(const std::vector<Aggregate>& aggregates, std::ostream& out) {
  out << "map,algorithm,m,budget_seconds,runs,failed,mean_cost,ci95_half_width\n";
  for (const Aggregate& a : aggregates)
    out << csv_escape(a.map) << ',' << csv_escape(a.algorithm) << ',' << a.m << ','
        << format_double(a.budget_seconds) << ',' << a.runs << ',' << a.failed << ','
        << format_double(a.mean_cost) << ',' << format_double(a.ci95_half_width) << '\n';
  if (!out) throw std::ios_base::failure("failed writing aggregates");
}

Analysis analyze(const std::vector<CsvRecord>& records, double bin_ms) {
  if (!(bin_ms > 0.0)) throw std::invalid_argument("time bin width must be positive");
  using Key = std::tuple<std::string, std::string, int, double>;
  struct Group {
    std::vector<const CsvRecord*> rows;
    int max_exponent = 1;
  };
  std::map<Key, Group> groups;
  for (const CsvRecord& r : records) {
    const auto h = parse_heuristic(r.heuristic);
    const auto e = exponent_of(r.neighborhood_size);
    if (!h || !e) continue;
    Group& g = groups[{r.map, r.algorithm, r.m, r.budget_seconds}];
    g.rows.push_back(&r);
    g.max_exponent = std::max(g.max_exponent, *e);
  }

  Analysis out;
  for (const auto& [key, group] : groups) {
    const auto& [map, algorithm, m, budget] = key;
    const int E = group.max_exponent;
    std::vector<int64_t> cells(kNumHeuristics * E, 0);
    std::map<int64_t, std::vector<int64_t>> bins;  // bin -> 3 heuristic counts then E size counts
    for (const CsvRecord* r : group.rows) {
      const int h = static_cast<int>(*parse_heuristic(r->heuristic));
      const int e = *exponent_of(r->neighborhood_size);
      ++cells[h * E + e - 1];
      auto& bin = bins[static_cast<int64_t>(std::floor(r->elapsed_ms / bin_ms))];
      if (bin.empty()) bin.assign(kNumHeuristics + E, 0);
      ++bin[h];
      ++bin[kNumHeuristics + e - 1];
    }
    const double total = static_cast<double>(group.rows.size());
    for (int h = 0; h < kNumHeuristics; ++h)
      for (int e = 1; e <= E; ++e) {
        const int64_t c = cells[h * E + e - 1];
        out.heatmap.push_back({map, algorithm, m, budget, std::string(to_string(static_cast<HeuristicKind>(h))),
                               1 << e, c, static_cast<double>(c) / total});
      }
    for (const auto& [bin, counts] : bins) {
      int64_t bin_total = 0;
      for (int h = 0; h < kNumHeuristics; ++h) bin_total += counts[h];
      const double start = static_cast<double>(bin) * bin_ms;
      for (int h = 0; h < kNumHeuristics; ++h)
        out.choices.push_back({map, algorithm, m, budget, start, "heuristic",
                               std::string(to_string(static_cast<HeuristicKind>(h))), counts[h],
                               static_cast<double>(counts[h]) / static_cast<double>(bin_total)});
      for (int e = 1; e <= E; ++e) {
        const int64_t c = counts[kNumHeuristics + e - 1];
        out.choices.push_back({map, algorithm, m, budget, start, "neighborhood_size", std::to_string(1 << e), c,
                               static_cast<double>(c) / static_cast<double>(bin_total)});
      }
    }
  }
  return out;
}

void write_heatmap(const std::vector<HeatmapCell>& cells, std::ostream& out) {
  out << "map,algorithm,m,budget_seconds,heuristic,neighborhood_size,count,frequency\n";
  for (const HeatmapCell& c : cells)
    out << csv_escape(c.map) << ',' << csv_escape(c.algorithm) << ',' << c.m << ','
        << format_double(c.budget_seconds) << ',' << c.heuristic << ',' << c.neighborhood_size << ','
        << c.count << ',' << format_double(c.frequency) << '\n';
  if (!out) throw std::ios_base::failure("failed writing heatmap");
}

void write_choices(const std::vector<ChoiceBin>& bins, std::ostream& out) {
  out << "map,algorithm,m,budget_seconds,bin_start_ms,dimension,value,count,frequency\n";
  for (const ChoiceBin& b : bins)
    out << csv_escape(b.map) << ',' << csv_escape(b.algorithm) << ',' << b.m << ','
        << format_double(b.budget_seconds) << ',' << format_double(b.bin_start_ms) << ',' << b.dimension << ','
        << b.value << ',' << b.count << ',' << format_double(b.frequency) << '\n';
  if (!out) throw std::ios_base::failure("failed writing choice series");
}

}  // namespace balance
