#include "asyncbo/proposer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "asyncbo/errors.hpp"

namespace asyncbo {

ObservationSet::ObservationSet(std::vector<Observation> items) {
  items_.reserve(items.size());
  for (auto& obs : items) append(std::move(obs));
}

void ObservationSet::append(Observation obs) {
  if (!std::isfinite(obs.y)) throw DomainError("observation value must be finite");
  items_.push_back(std::move(obs));
}

void ProposerConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  if (n_startup < 1 || max_rejection_attempts < 1 || n_candidates_classic < 1) {
    throw DomainError("proposer counts must be at least 1");
  }
}

std::size_t below_count(std::size_t n, double gamma) {
  const auto k = static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(n)));
  return std::min(n, std::max<std::size_t>(1, k));
}

GammaSplit split(const ObservationSet& observed, double gamma) {
  if (observed.empty()) throw PreconditionError("cannot split an empty observation set");
  const auto items = observed.items();
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return items[a].y < items[b].y;
  });

  GammaSplit out;
  out.gamma = gamma;
  const std::size_t n_below = below_count(items.size(), gamma);
  out.below.reserve(n_below);
  out.above.reserve(items.size() - n_below);
  for (std::size_t r = 0; r < order.size(); ++r) {
    (r < n_below ? out.below : out.above).push_back(items[order[r]]);
  }
  out.y_star = out.above.empty() ? std::numeric_limits<double>::infinity()
                                 : out.above.front().y;
  return out;
}

double success_probability_from_logs(double log_l, double log_g, double gamma) {
  return 1.0 / (1.0 + std::exp(log_g - log_l + std::log((1.0 - gamma) / gamma)));
}

double success_probability(const Point& p, const ParzenEstimator& l,
                           const ParzenEstimator& g, double gamma) {
  return success_probability_from_logs(l.log_pdf(p), g.log_pdf(p), gamma);
}

TpeModel::TpeModel(ParzenEstimator below, ParzenEstimator above, double gamma)
    : below_(std::move(below)),
      above_(std::move(above)),
      gamma_(gamma),
      log_prior_odds_(std::log((1.0 - gamma) / gamma)) {}

std::optional<TpeModel> TpeModel::fit(const ObservationSet& observed,
                                      const SearchSpace& space, double gamma) {
  const GammaSplit s = split(observed, gamma);
  if (s.above.empty()) return std::nullopt;
  auto xs = [](const std::vector<Observation>& obs) {
    std::vector<Point> pts;
    pts.reserve(obs.size());
    for (const auto& o : obs) pts.push_back(o.x);
    return pts;
  };
  return TpeModel(ParzenEstimator::fit(xs(s.below), space),
                  ParzenEstimator::fit(xs(s.above), space), gamma);
}

double TpeModel::success_probability(const Point& p) const {
  return 1.0 / (1.0 + std::exp(above_.log_pdf(p) - below_.log_pdf(p) + log_prior_odds_));
}

RejectionDraw TpeModel::sample_by_rejection(std::size_t max_attempts,
                                            RandomStream& rng) const {
  const SearchSpace& space = below_.space();
  RejectionDraw best;
  best.probability = -1.0;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Point candidate = space.sample_uniform(rng);
    const double prob = success_probability(candidate);
    if (rng.uniform01() < prob) {
      return {std::move(candidate), attempt, true, prob};
    }
    if (prob > best.probability) {
      best.x = std::move(candidate);
      best.probability = prob;
    }
  }
  best.attempts = max_attempts;
  return best;
}

Point TpeModel::argmax_ratio(std::size_t n_candidates, RandomStream& rng) const {
  Point best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_candidates; ++i) {
    Point candidate = below_.sample(rng);
    const double score = below_.log_pdf(candidate) - above_.log_pdf(candidate);
    if (i == 0 || score > best_score) {
      best_score = score;
      best = std::move(candidate);
    }
  }
  return best;
}

Point propose(const ObservationSet& observed, const SearchSpace& space,
              const ProposerConfig& cfg, RandomStream& rng) {
  cfg.validate();
  if (observed.size() < cfg.n_startup) return space.sample_uniform(rng);
  const auto model = TpeModel::fit(observed, space, cfg.gamma);
  if (!model) return space.sample_uniform(rng);
  return model->sample_by_rejection(cfg.max_rejection_attempts, rng).x;
}

Point propose_classic_tpe(const ObservationSet& observed, const SearchSpace& space,
                          const ProposerConfig& cfg, RandomStream& rng) {
  cfg.validate();
  if (observed.size() < cfg.n_startup) return space.sample_uniform(rng);
  const auto model = TpeModel::fit(observed, space, cfg.gamma);
  if (!model) return space.sample_uniform(rng);
  return model->argmax_ratio(cfg.n_candidates_classic, rng);
}

}  // namespace asyncbo
