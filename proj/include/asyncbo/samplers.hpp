#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "asyncbo/gp.hpp"
#include "asyncbo/proposer.hpp"

namespace asyncbo {

/// Proposal strategy consulted by the simulator whenever a worker frees up.
/// Implementations see only completed observations.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual std::string_view name() const = 0;
  virtual Point propose(const ObservationSet& observed, const SearchSpace& space,
                        RandomStream& rng) = 0;
};

class AsyncTpeSampler final : public Sampler {
 public:
  explicit AsyncTpeSampler(ProposerConfig cfg = {});
  std::string_view name() const override { return "async-tpe"; }
  Point propose(const ObservationSet& observed, const SearchSpace& space,
                RandomStream& rng) override;

 private:
  ProposerConfig cfg_;
};

class ClassicTpeSampler final : public Sampler {
 public:
  explicit ClassicTpeSampler(ProposerConfig cfg = {});
  std::string_view name() const override { return "classic-tpe"; }
  Point propose(const ObservationSet& observed, const SearchSpace& space,
                RandomStream& rng) override;

 private:
  ProposerConfig cfg_;
};

/// GP Thompson sampling; hyperparameters are refitted on every proposal.
/// Uniform until n_startup observations exist.
class ParallelTsSampler final : public Sampler {
 public:
  explicit ParallelTsSampler(std::size_t n_startup = 10, GpFitOptions fit = {});
  std::string_view name() const override { return "parallel-ts"; }
  Point propose(const ObservationSet& observed, const SearchSpace& space,
                RandomStream& rng) override;

 private:
  std::size_t n_startup_;
  GpFitOptions fit_;
};

class RandomSampler final : public Sampler {
 public:
  std::string_view name() const override { return "random"; }
  Point propose(const ObservationSet& observed, const SearchSpace& space,
                RandomStream& rng) override;
};

std::span<const std::string_view> sampler_names();

/// ConfigError listing the valid names when `name` is unknown.
std::unique_ptr<Sampler> make_sampler(std::string_view name, const ProposerConfig& cfg = {});

}  // namespace asyncbo
