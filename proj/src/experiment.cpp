#include "asyncbo/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "asyncbo/errors.hpp"

namespace asyncbo {
namespace {

constexpr std::array<std::string_view, 15> kConfigKeys{
    "objective",    "sampler",        "workers",   "budget",
    "trials",       "gamma",          "seed",      "seed_stride",
    "out",          "n_startup",      "max_rejection_attempts",
    "n_candidates", "charge_proposal_time",        "duration_base",
    "param"};

constexpr std::array<std::string_view, 3> kObjectiveNames{"hartmann18", "hartmann6",
                                                          "mlp-surrogate"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string join(std::span<const std::string_view> names) {
  std::string out;
  for (auto n : names) out += (out.empty() ? "" : ", ") + std::string(n);
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a number");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + text + "'");
}

ParamDomain parse_param(const std::string& text) {
  std::istringstream in(text);
  std::string name, low, high, kind;
  if (!(in >> name >> low >> high >> kind)) {
    throw ConfigError("param '" + text + "': expected '<name> <low> <high> <kind>'");
  }
  try {
    ParamDomain d{name, parse_number<double>("param", low), parse_number<double>("param", high),
                  param_kind_from_string(kind)};
    SearchSpace({d});
    return d;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("param: ") + e.what());
  }
}

// Shifted by the first value so that identical inputs give exactly zero.
double sample_std(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  double shift = 0.0;
  for (double x : v) shift += x - v[0];
  shift /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - v[0] - shift) * (x - v[0] - shift);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void push_stats(AggregateCurve& curve, double x, const std::vector<double>& values) {
  curve.grid.push_back(x);
  curve.count.push_back(values.size());
  if (values.empty()) {
    curve.mean.push_back(std::numeric_limits<double>::quiet_NaN());
    curve.std_error.push_back(0.0);
    return;
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  curve.mean.push_back(mean);
  curve.std_error.push_back(sample_std(values) /
                            std::sqrt(static_cast<double>(values.size())));
}

}  // namespace

ProposerConfig ExperimentConfig::proposer() const {
  return ProposerConfig{gamma, n_startup, max_rejection_attempts, n_candidates};
}

SimConfig ExperimentConfig::simulation(std::size_t trial) const {
  return SimConfig{workers, budget_seconds, base_seed + trial * seed_stride,
                   charge_proposal_time};
}

std::span<const std::string_view> config_keys() { return kConfigKeys; }

std::span<const std::string_view> objective_names() { return kObjectiveNames; }

ExperimentConfig parse_config(std::istream& in, const ConfigOverrides& overrides,
                              std::string_view source) {
  const std::set<std::string_view> known(kConfigKeys.begin(), kConfigKeys.end());
  std::map<std::string, std::string> values;
  std::vector<std::string> params;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + body + "'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (!known.contains(key)) {
      throw ConfigError(where + ": unknown key '" + key + "' (valid: " + join(kConfigKeys) +
                        ")");
    }
    if (key == "param") {
      params.push_back(value);
    } else if (!values.emplace(key, value).second) {
      throw ConfigError(where + ": duplicate key '" + key + "'");
    }
  }
  for (const auto& [key, value] : overrides) {
    if (!known.contains(key) || key == "param") {
      throw ConfigError("unknown override key '" + key + "'");
    }
    values[key] = value;
  }

  std::vector<std::string> missing;
  for (const char* required : {"objective", "sampler"}) {
    if (!values.contains(required)) missing.emplace_back(required);
  }
  if (!missing.empty()) {
    std::string names;
    for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
    throw ConfigError(std::string(source) + ": missing required key(s): " + names);
  }

  ExperimentConfig cfg;
  for (const auto& [key, value] : values) {
    if (key == "objective") cfg.objective = value;
    else if (key == "sampler") cfg.sampler = value;
    else if (key == "workers") cfg.workers = parse_number<std::size_t>(key, value);
    else if (key == "budget") cfg.budget_seconds = parse_number<double>(key, value);
    else if (key == "trials") cfg.n_trials = parse_number<std::size_t>(key, value);
    else if (key == "gamma") cfg.gamma = parse_number<double>(key, value);
    else if (key == "seed") cfg.base_seed = parse_number<std::uint64_t>(key, value);
    else if (key == "seed_stride") cfg.seed_stride = parse_number<std::uint64_t>(key, value);
    else if (key == "out") cfg.out_dir = value;
    else if (key == "n_startup") cfg.n_startup = parse_number<std::size_t>(key, value);
    else if (key == "max_rejection_attempts")
      cfg.max_rejection_attempts = parse_number<std::size_t>(key, value);
    else if (key == "n_candidates") cfg.n_candidates = parse_number<std::size_t>(key, value);
    else if (key == "charge_proposal_time") cfg.charge_proposal_time = parse_bool(key, value);
    else if (key == "duration_base") cfg.duration_base = parse_number<double>(key, value);
  }
  for (const auto& p : params) cfg.params.push_back(parse_param(p));

  if (std::find(kObjectiveNames.begin(), kObjectiveNames.end(), cfg.objective) ==
      kObjectiveNames.end()) {
    throw ConfigError("unknown objective '" + cfg.objective + "' (valid: " +
                      join(kObjectiveNames) + ")");
  }
  const auto samplers = sampler_names();
  if (std::find(samplers.begin(), samplers.end(), cfg.sampler) == samplers.end()) {
    throw ConfigError("unknown sampler '" + cfg.sampler + "' (valid: " + join(samplers) +
                      ")");
  }
  if (cfg.n_trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
  if (!(cfg.budget_seconds > 0.0)) throw ConfigError("budget must be positive");
  try {
    cfg.proposer().validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path,
                                   const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, overrides, path.string());
}

ObjectiveSpec make_objective(std::string_view name, double duration_base) {
  if (name == "hartmann18") return make_hartmann18();
  if (name == "hartmann6") return make_hartmann6();
  if (name == "mlp-surrogate") return make_mlp_surrogate(duration_base);
  throw ConfigError("unknown objective '" + std::string(name) + "' (valid: " +
                    join(kObjectiveNames) + ")");
}

ObjectiveSpec resolve_objective(const ExperimentConfig& cfg) {
  ObjectiveSpec spec = make_objective(cfg.objective, cfg.duration_base);
  if (!cfg.params.empty()) {
    if (cfg.params.size() != spec.space.dim()) {
      throw ConfigError("objective '" + cfg.objective + "' has " +
                        std::to_string(spec.space.dim()) + " dimensions but the config " +
                        "declares " + std::to_string(cfg.params.size()) + " params");
    }
    try {
      spec.space = SearchSpace(cfg.params);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("param: ") + e.what());
    }
  }
  return spec;
}

AggregateCurve aggregate_by_evaluations(std::span<const Trace> traces) {
  AggregateCurve curve;
  if (traces.empty()) return curve;
  std::size_t length = std::numeric_limits<std::size_t>::max();
  for (const auto& t : traces) length = std::min(length, t.trials.size());
  if (length == 0) return curve;

  std::vector<StepFunction> steps;
  for (const auto& t : traces) steps.push_back(best_so_far(t, Axis::evaluations));
  std::vector<double> values(traces.size());
  for (std::size_t k = 0; k < length; ++k) {
    for (std::size_t i = 0; i < steps.size(); ++i) values[i] = steps[i].y[k];
    push_stats(curve, static_cast<double>(k + 1), values);
  }
  return curve;
}

AggregateCurve aggregate_by_time(std::span<const Trace> traces, double budget,
                                 std::size_t points) {
  AggregateCurve curve;
  std::vector<StepFunction> steps;
  for (const auto& t : traces) {
    if (!t.trials.empty()) steps.push_back(best_so_far(t, Axis::time));
  }
  std::vector<double> values;
  for (std::size_t g = 1; g <= points; ++g) {
    const double t = budget * static_cast<double>(g) / static_cast<double>(points);
    values.clear();
    for (const auto& s : steps) {
      const double v = s.at(t);
      if (!std::isnan(v)) values.push_back(v);
    }
    push_stats(curve, t, values);
  }
  return curve;
}

void write_aggregate_csv(std::ostream& out, const AggregateCurve& curve,
                         std::string_view axis_name) {
  out << axis_name << ",mean_best,std_error,count\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_double(curve.grid[i]) << ',' << format_double(curve.mean[i]) << ','
        << format_double(curve.std_error[i]) << ',' << curve.count[i] << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_files) {
  const ObjectiveSpec objective = resolve_objective(cfg);
  ExperimentResult result;
  result.traces.reserve(cfg.n_trials);
  for (std::size_t i = 0; i < cfg.n_trials; ++i) {
    auto sampler = make_sampler(cfg.sampler, cfg.proposer());
    result.traces.push_back(run(objective, *sampler, cfg.simulation(i)));
  }
  result.by_evaluations = aggregate_by_evaluations(result.traces);
  result.by_time = aggregate_by_time(result.traces, cfg.budget_seconds);

  if (write_files) {
    std::filesystem::create_directories(cfg.out_dir);
    auto open = [&](const std::string& file) {
      std::ofstream out(cfg.out_dir / file);
      if (!out) throw std::runtime_error("cannot write '" + (cfg.out_dir / file).string() + "'");
      return out;
    };
    for (std::size_t i = 0; i < result.traces.size(); ++i) {
      auto out = open("trace_" + std::to_string(i) + ".csv");
      write_trace_csv(out, result.traces[i], objective.space);
    }
    auto evals = open("aggregate_evals.csv");
    write_aggregate_csv(evals, result.by_evaluations, "evaluations");
    auto times = open("aggregate_time.csv");
    write_aggregate_csv(times, result.by_time, "time");
  }
  return result;
}

std::vector<std::size_t> doubling_sizes(std::size_t min_n, std::size_t max_n) {
  if (min_n < 1 || min_n > max_n) throw PreconditionError("need 1 <= min_n <= max_n");
  std::vector<std::size_t> sizes;
  for (std::size_t n = min_n; n < max_n; n *= 2) sizes.push_back(n);
  sizes.push_back(max_n);
  return sizes;
}

std::vector<ProposalCost> bench_proposal_cost(std::string_view sampler_name,
                                              const ObjectiveSpec& objective,
                                              std::span<const std::size_t> sizes,
                                              std::size_t reps, std::uint64_t seed,
                                              const ProposerConfig& cfg) {
  if (reps < 1) throw PreconditionError("bench needs at least one repetition");
  auto sampler = make_sampler(sampler_name, cfg);
  std::vector<ProposalCost> out;
  for (std::size_t n : sizes) {
    RandomStream data_rng(seed + n, "bench-data");
    ObservationSet observed;
    for (std::size_t i = 0; i < n; ++i) {
      Point x = objective.space.sample_uniform(data_rng);
      const double y = objective.eval(objective.space.externalize(x));
      observed.append({std::move(x), y});
    }
    std::vector<double> seconds;
    for (std::size_t r = 0; r < reps; ++r) {
      RandomStream rng(seed + r, "bench-proposal");
      const auto start = std::chrono::steady_clock::now();
      const Point p = sampler->propose(observed, objective.space, rng);
      seconds.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      objective.space.validate(p);
    }
    std::sort(seconds.begin(), seconds.end());
    const double median = seconds.size() % 2 == 1
                              ? seconds[seconds.size() / 2]
                              : 0.5 * (seconds[seconds.size() / 2 - 1] +
                                       seconds[seconds.size() / 2]);
    out.push_back({n, median, seconds.front(), reps});
  }
  return out;
}

void write_proposal_cost_csv(std::ostream& out, std::span<const ProposalCost> costs) {
  out << "n,median_seconds,min_seconds,reps\n";
  for (const auto& c : costs) {
    out << c.n << ',' << format_double(c.median_seconds) << ','
        << format_double(c.min_seconds) << ',' << c.reps << '\n';
  }
}

double loglog_slope(std::span<const ProposalCost> costs, std::size_t lo, std::size_t hi) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : costs) {
    if (c.n >= lo && c.n <= hi) {
      pts.emplace_back(std::log(static_cast<double>(c.n)), std::log(c.median_seconds));
    }
  }
  if (pts.size() < 2) throw PreconditionError("slope needs at least two sizes in range");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

}  // namespace asyncbo
