#include "asyncbo/samplers.hpp"

#include <algorithm>
#include <array>

#include "asyncbo/errors.hpp"

namespace asyncbo {
namespace {

constexpr std::array<std::string_view, 4> kSamplerNames{"async-tpe", "classic-tpe",
                                                        "parallel-ts", "random"};

}  // namespace

AsyncTpeSampler::AsyncTpeSampler(ProposerConfig cfg) : cfg_(cfg) { cfg_.validate(); }

Point AsyncTpeSampler::propose(const ObservationSet& observed, const SearchSpace& space,
                               RandomStream& rng) {
  return asyncbo::propose(observed, space, cfg_, rng);
}

ClassicTpeSampler::ClassicTpeSampler(ProposerConfig cfg) : cfg_(cfg) { cfg_.validate(); }

Point ClassicTpeSampler::propose(const ObservationSet& observed, const SearchSpace& space,
                                 RandomStream& rng) {
  return propose_classic_tpe(observed, space, cfg_, rng);
}

ParallelTsSampler::ParallelTsSampler(std::size_t n_startup, GpFitOptions fit)
    : n_startup_(std::max<std::size_t>(n_startup, 2)), fit_(fit) {}

Point ParallelTsSampler::propose(const ObservationSet& observed, const SearchSpace& space,
                                 RandomStream& rng) {
  if (observed.size() < n_startup_) return space.sample_uniform(rng);
  const GPModel gp = fit_gp(observed, space, rng, fit_);
  return thompson_propose(gp, space, observed.size(), rng);
}

Point RandomSampler::propose(const ObservationSet&, const SearchSpace& space,
                             RandomStream& rng) {
  return propose_random(space, rng);
}

std::span<const std::string_view> sampler_names() { return kSamplerNames; }

std::unique_ptr<Sampler> make_sampler(std::string_view name, const ProposerConfig& cfg) {
  if (name == "async-tpe") return std::make_unique<AsyncTpeSampler>(cfg);
  if (name == "classic-tpe") return std::make_unique<ClassicTpeSampler>(cfg);
  if (name == "parallel-ts") return std::make_unique<ParallelTsSampler>(cfg.n_startup);
  if (name == "random") return std::make_unique<RandomSampler>();
  std::string valid;
  for (auto n : kSamplerNames) valid += (valid.empty() ? "" : ", ") + std::string(n);
  throw ConfigError("unknown sampler '" + std::string(name) + "' (valid: " + valid + ")");
}

}  // namespace asyncbo
