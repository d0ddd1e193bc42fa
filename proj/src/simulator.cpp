#include "asyncbo/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <tuple>

#include "asyncbo/errors.hpp"

namespace asyncbo {

void SimConfig::validate() const {
  if (workers < 1) throw DomainError("simulation needs at least one worker");
  if (!(budget_seconds > 0.0)) throw DomainError("simulation budget must be positive");
}

namespace {

struct InFlight {
  Point x;
  std::vector<double> x_external;
  double y;
  double t_start;
  double t_end;
  std::size_t n_observed;
};

using Event = std::tuple<double, std::size_t>;  // (t_end, worker)

}  // namespace

Trace run(const ObjectiveSpec& objective, Sampler& sampler, const SimConfig& cfg) {
  cfg.validate();
  RandomStream proposal_rng(cfg.seed, "proposal");
  RandomStream duration_rng(cfg.seed, "duration");

  Trace trace;
  trace.budget = cfg.budget_seconds;
  trace.workers = cfg.workers;
  trace.seed = cfg.seed;

  ObservationSet observed;
  std::vector<std::optional<InFlight>> running(cfg.workers);
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  std::size_t dispatched = 0;

  auto dispatch = [&](std::size_t worker, double now) {
    if (now >= cfg.budget_seconds) return;
    try {
      const auto started = std::chrono::steady_clock::now();
      Point x = sampler.propose(observed, objective.space, proposal_rng);
      double t_start = now;
      if (cfg.charge_proposal_time) {
        t_start += std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                       .count();
        if (t_start >= cfg.budget_seconds) return;
      }
      std::vector<double> ext = objective.space.externalize(x);
      const double y = objective.eval(ext);
      const double dt = objective.duration(ext, duration_rng);
      if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw DomainError("evaluation duration must be positive and finite");
      }
      running[worker] = InFlight{std::move(x), std::move(ext), y, t_start, t_start + dt,
                                 observed.size()};
      events.emplace(t_start + dt, worker);
      ++dispatched;
    } catch (const std::exception& e) {
      throw SimulationError("trial dispatch " + std::to_string(dispatched) + " (worker " +
                            std::to_string(worker) + ", t=" + format_double(now) + ", " +
                            std::string(sampler.name()) + " on " + objective.name +
                            "): " + e.what());
    }
  };

  for (std::size_t w = 0; w < cfg.workers; ++w) dispatch(w, 0.0);

  while (!events.empty()) {
    const auto [t_end, worker] = events.top();
    events.pop();
    if (t_end > cfg.budget_seconds) break;  // everything left ends later still
    InFlight done = std::move(*running[worker]);
    running[worker].reset();

    observed.append({done.x, done.y});
    trace.trials.push_back(TrialRecord{trace.trials.size(), std::move(done.x),
                                       std::move(done.x_external), done.y, done.t_start,
                                       done.t_end, worker, done.n_observed});
    dispatch(worker, t_end);
  }
  return trace;
}

double StepFunction::at(double t) const {
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  if (it == x.begin()) return std::numeric_limits<double>::quiet_NaN();
  return y[static_cast<std::size_t>(it - x.begin()) - 1];
}

StepFunction best_so_far(const Trace& trace, Axis axis) {
  if (trace.trials.empty()) throw PreconditionError("best-so-far of an empty trace");
  StepFunction f;
  f.x.reserve(trace.trials.size());
  f.y.reserve(trace.trials.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : trace.trials) {
    best = std::min(best, t.y);
    f.x.push_back(axis == Axis::evaluations ? static_cast<double>(t.index + 1) : t.t_end);
    f.y.push_back(best);
  }
  return f;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, const Trace& trace, const SearchSpace& space) {
  out << "trial_index,worker,t_start,t_end,y,best_y";
  for (const auto& d : space.dims()) out << ',' << d.name;
  out << '\n';
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : trace.trials) {
    best = std::min(best, t.y);
    out << t.index << ',' << t.worker << ',' << format_double(t.t_start) << ','
        << format_double(t.t_end) << ',' << format_double(t.y) << ','
        << format_double(best);
    for (double v : t.x_external) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace asyncbo
