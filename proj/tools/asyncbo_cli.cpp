#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "asyncbo/errors.hpp"
#include "asyncbo/experiment.hpp"

namespace {

void print_final_summary(const asyncbo::ExperimentConfig& cfg,
                         const asyncbo::ExperimentResult& result) {
  const auto& curve = result.by_time;
  std::cout << cfg.sampler << " on " << cfg.objective << ": " << cfg.n_trials
            << " trial(s), " << cfg.workers << " worker(s), budget " << cfg.budget_seconds
            << " s\n";
  if (!curve.grid.empty()) {
    std::cout << "  final best: mean " << asyncbo::format_double(curve.mean.back())
              << ", std error " << asyncbo::format_double(curve.std_error.back()) << '\n';
  }
  std::size_t total = 0;
  for (const auto& t : result.traces) total += t.trials.size();
  std::cout << "  completed evaluations per trial (mean): "
            << static_cast<double>(total) / static_cast<double>(result.traces.size()) << '\n';
  std::cout << "  outputs written to " << cfg.out_dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous parallel Bayesian optimization experiments"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a batch experiment from a config file");
  std::string config_path;
  run_cmd->add_option("--config", config_path, "Experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  std::optional<std::string> objective, sampler, out;
  std::optional<std::string> workers, budget, trials, gamma, seed;
  run_cmd->add_option("--objective", objective, "hartmann18 | hartmann6 | mlp-surrogate");
  run_cmd->add_option("--sampler", sampler, "async-tpe | classic-tpe | parallel-ts | random");
  run_cmd->add_option("--workers", workers, "Parallel workers");
  run_cmd->add_option("--budget", budget, "Simulated seconds per trial");
  run_cmd->add_option("--trials", trials, "Independent trials");
  run_cmd->add_option("--gamma", gamma, "Good/bad split quantile");
  run_cmd->add_option("--seed", seed, "Base seed; trial i uses seed + i");
  run_cmd->add_option("--out", out, "Output directory");

  auto* bench_cmd = app.add_subcommand(
      "bench-proposal-cost", "Time one proposal as a function of the number of observations");
  std::string bench_sampler;
  std::string bench_objective = "hartmann18";
  std::size_t max_n = 1000;
  std::size_t min_n = 100;
  std::size_t reps = 3;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  bench_cmd->add_option("--sampler", bench_sampler, "Sampler to time")->required();
  bench_cmd->add_option("--max-n", max_n, "Largest |D|")->capture_default_str();
  bench_cmd->add_option("--min-n", min_n, "Smallest |D|; sizes double up to --max-n")
      ->capture_default_str();
  bench_cmd->add_option("--reps", reps, "Proposals timed per size (median reported)")
      ->capture_default_str();
  bench_cmd->add_option("--objective", bench_objective, "Objective providing the data")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed, "Seed")->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      asyncbo::ConfigOverrides overrides;
      auto put = [&](const char* key, const std::optional<std::string>& v) {
        if (v) overrides[key] = *v;
      };
      put("objective", objective);
      put("sampler", sampler);
      put("workers", workers);
      put("budget", budget);
      put("trials", trials);
      put("gamma", gamma);
      put("seed", seed);
      put("out", out);
      const auto cfg = asyncbo::parse_config_file(config_path, overrides);
      const auto result = asyncbo::run_experiment(cfg);
      print_final_summary(cfg, result);
    } else if (bench_cmd->parsed()) {
      const auto spec = asyncbo::make_objective(bench_objective);
      const auto sizes = asyncbo::doubling_sizes(min_n, max_n);
      const auto costs =
          asyncbo::bench_proposal_cost(bench_sampler, spec, sizes, reps, bench_seed);
      if (bench_out.empty()) {
        asyncbo::write_proposal_cost_csv(std::cout, costs);
      } else {
        std::ofstream file(bench_out);
        asyncbo::write_proposal_cost_csv(file, costs);
      }
      if (costs.size() >= 2) {
        std::cerr << "log-log slope over [" << costs.front().n << ", " << costs.back().n
                  << "]: "
                  << asyncbo::loglog_slope(costs, costs.front().n, costs.back().n) << '\n';
      }
    }
  } catch (const asyncbo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
