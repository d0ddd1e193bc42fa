#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asyncbo/benchmarks.hpp"
#include "asyncbo/proposer.hpp"
#include "asyncbo/simulator.hpp"

namespace asyncbo {

struct ExperimentConfig {
  std::string objective;
  std::string sampler;
  std::size_t workers = 4;
  double budget_seconds = 500.0;
  std::size_t n_trials = 10;
  double gamma = 0.1;
  std::uint64_t base_seed = 0;
  /// Trial i runs with seed base_seed + i * seed_stride; 0 repeats one seed.
  std::uint64_t seed_stride = 1;
  std::filesystem::path out_dir = "results";
  std::size_t n_startup = 10;
  std::size_t max_rejection_attempts = 1000;
  std::size_t n_candidates = 24;
  bool charge_proposal_time = false;
  double duration_base = 1.0;  // mlp-surrogate only
  /// Replaces the objective's own search space when non-empty.
  std::vector<ParamDomain> params;

  ProposerConfig proposer() const;
  SimConfig simulation(std::size_t trial) const;
};

/// Raw `key -> value` strings that take precedence over the file.
using ConfigOverrides = std::map<std::string, std::string>;

std::span<const std::string_view> config_keys();

/// Reads the line-oriented `key = value` format ('#' starts a comment,
/// `param = <name> <low> <high> <continuous|integer>` may repeat), applies
/// `overrides`, and validates. ConfigError on unknown keys, malformed
/// values, or missing `objective` / `sampler`.
ExperimentConfig parse_config(std::istream& in, const ConfigOverrides& overrides = {},
                              std::string_view source = "<config>");
ExperimentConfig parse_config_file(const std::filesystem::path& path,
                                   const ConfigOverrides& overrides = {});

std::span<const std::string_view> objective_names();

/// ConfigError listing the valid names when `name` is unknown.
ObjectiveSpec make_objective(std::string_view name, double duration_base = 1.0);

/// make_objective plus the config's search-space override, if any.
ObjectiveSpec resolve_objective(const ExperimentConfig& cfg);

struct AggregateCurve {
  std::vector<double> grid;
  std::vector<double> mean;
  std::vector<double> std_error;    // sample std / sqrt(count)
  std::vector<std::size_t> count;   // trials with a defined value at the grid point
};

/// Grid 1..L with L the shortest trace length.
AggregateCurve aggregate_by_evaluations(std::span<const Trace> traces);

/// `points` evenly spaced times in (0, budget]. A trial without any
/// completion yet is left out of that grid point's statistics.
AggregateCurve aggregate_by_time(std::span<const Trace> traces, double budget,
                                 std::size_t points = 200);

void write_aggregate_csv(std::ostream& out, const AggregateCurve& curve,
                         std::string_view axis_name);

struct ExperimentResult {
  std::vector<Trace> traces;
  AggregateCurve by_evaluations;
  AggregateCurve by_time;
};

/// Runs cfg.n_trials simulations. With `write_files`, writes trace_<i>.csv,
/// aggregate_evals.csv and aggregate_time.csv into cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_files = true);

struct ProposalCost {
  std::size_t n = 0;
  double median_seconds = 0.0;
  double min_seconds = 0.0;
  std::size_t reps = 0;
};

/// min_n, 2 min_n, 4 min_n, ... and finally max_n itself.
std::vector<std::size_t> doubling_sizes(std::size_t min_n, std::size_t max_n);

/// Wall-clock cost of one proposal (model fit included) from |D| = n
/// uniformly drawn observations, for each n in `sizes`.
std::vector<ProposalCost> bench_proposal_cost(std::string_view sampler,
                                              const ObjectiveSpec& objective,
                                              std::span<const std::size_t> sizes,
                                              std::size_t reps, std::uint64_t seed,
                                              const ProposerConfig& cfg = {});

void write_proposal_cost_csv(std::ostream& out, std::span<const ProposalCost> costs);

/// Least-squares slope of log(median_seconds) against log(n) over entries
/// with lo <= n <= hi. PreconditionError with fewer than two such entries.
double loglog_slope(std::span<const ProposalCost> costs, std::size_t lo, std::size_t hi);

}  // namespace asyncbo
