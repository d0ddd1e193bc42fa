#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "asyncbo/parzen.hpp"
#include "asyncbo/random.hpp"
#include "asyncbo/search_space.hpp"

namespace asyncbo {

/// A completed evaluation. Objectives are minimized.
struct Observation {
  Point x;
  double y = 0.0;
};

/// Completed trials of a study. Append-only; a single writer appends while
/// any number of readers may propose from a snapshot.
class ObservationSet {
 public:
  ObservationSet() = default;
  explicit ObservationSet(std::vector<Observation> items);

  /// DomainError if y is not finite.
  void append(Observation obs);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::span<const Observation> items() const { return items_; }
  const Observation& operator[](std::size_t i) const { return items_[i]; }

 private:
  std::vector<Observation> items_;
};

struct GammaSplit {
  std::vector<Observation> below;
  std::vector<Observation> above;
  double y_star = 0.0;  // smallest y in `above`, +inf when `above` is empty
  double gamma = 0.1;
};

struct ProposerConfig {
  double gamma = 0.1;
  std::size_t n_startup = 10;
  std::size_t max_rejection_attempts = 1000;
  std::size_t n_candidates_classic = 24;

  /// DomainError unless 0 < gamma < 1 and all counts are >= 1.
  void validate() const;
};

/// Number of observations placed in `below`: max(1, ceil(gamma * n)).
std::size_t below_count(std::size_t n, double gamma);

/// Sorts by y (stable, so ties keep insertion order) and takes the first
/// below_count(n, gamma) as `below`. PreconditionError on an empty set.
GammaSplit split(const ObservationSet& observed, double gamma);

/// p(y < y* | x) = gamma l / (gamma l + (1 - gamma) g), from log densities.
double success_probability_from_logs(double log_l, double log_g, double gamma);

double success_probability(const Point& p, const ParzenEstimator& l,
                           const ParzenEstimator& g, double gamma);

struct RejectionDraw {
  Point x;
  std::size_t attempts = 0;
  bool accepted = false;
  double probability = 0.0;  // success probability at x
};

/// The pair of densities l (good points) and g (the rest) fitted to one
/// snapshot of the observations.
class TpeModel {
 public:
  TpeModel(ParzenEstimator below, ParzenEstimator above, double gamma);

  /// Splits and fits. Returns nullopt when the split leaves `above` empty,
  /// since g is then undefined.
  static std::optional<TpeModel> fit(const ObservationSet& observed,
                                     const SearchSpace& space, double gamma);

  const ParzenEstimator& below() const { return below_; }
  const ParzenEstimator& above() const { return above_; }
  double gamma() const { return gamma_; }

  double success_probability(const Point& p) const;

  /// Uniform candidates accepted with probability success_probability, i.e.
  /// an exact draw from the density proportional to p(y < y* | x). After
  /// `max_attempts` rejections returns the most probable candidate seen.
  RejectionDraw sample_by_rejection(std::size_t max_attempts, RandomStream& rng) const;

  /// Draws `n_candidates` from l and returns the one maximizing l / g.
  Point argmax_ratio(std::size_t n_candidates, RandomStream& rng) const;

 private:
  ParzenEstimator below_;
  ParzenEstimator above_;
  double gamma_;
  double log_prior_odds_;  // log((1 - gamma) / gamma)
};

/// Asynchronous proposal: uniform during startup, otherwise a rejection
/// sample from p(y < y* | x). Pending evaluations are not consulted.
Point propose(const ObservationSet& observed, const SearchSpace& space,
              const ProposerConfig& cfg, RandomStream& rng);

/// Classic TPE rule: the best of n_candidates_classic draws from l by l / g.
Point propose_classic_tpe(const ObservationSet& observed, const SearchSpace& space,
                          const ProposerConfig& cfg, RandomStream& rng);

}  // namespace asyncbo
