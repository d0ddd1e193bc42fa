#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "asyncbo/benchmarks.hpp"
#include "asyncbo/samplers.hpp"

namespace asyncbo {

struct TrialRecord {
  std::size_t index = 0;  // completion order
  Point x;
  std::vector<double> x_external;
  double y = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t worker = 0;
  std::size_t n_observed = 0;  // |D| when the trial was proposed
};

struct Trace {
  std::vector<TrialRecord> trials;
  double budget = 0.0;
  std::size_t workers = 0;
  std::uint64_t seed = 0;
};

struct SimConfig {
  std::size_t workers = 4;
  double budget_seconds = 500.0;
  std::uint64_t seed = 0;
  /// Adds each proposal's measured wall-clock time to the simulated clock
  /// before its evaluation starts. Runs are no longer reproducible.
  bool charge_proposal_time = false;

  void validate() const;
};

/// Discrete-event run of the asynchronous loop. All workers are dispatched
/// at t = 0 (worker 0 first); completions are processed in (t_end, worker)
/// order, each appending its observation and immediately re-dispatching
/// the freed worker while t < budget. Trials still running at the budget
/// are dropped. Traces are a pure function of (objective, sampler, cfg)
/// unless proposal time is charged.
Trace run(const ObjectiveSpec& objective, Sampler& sampler, const SimConfig& cfg);

enum class Axis { evaluations, time };

/// Right-continuous step function; NaN before the first step.
struct StepFunction {
  std::vector<double> x;
  std::vector<double> y;

  double at(double t) const;
};

/// Running minimum of y by completion index (x = 1, 2, ...) or by t_end.
/// PreconditionError on an empty trace.
StepFunction best_so_far(const Trace& trace, Axis axis);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Header `trial_index,worker,t_start,t_end,y,best_y` followed by one column
/// per dimension holding the externalized coordinate.
void write_trace_csv(std::ostream& out, const Trace& trace, const SearchSpace& space);

}  // namespace asyncbo
