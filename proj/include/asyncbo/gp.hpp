#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "asyncbo/proposer.hpp"
#include "asyncbo/random.hpp"
#include "asyncbo/search_space.hpp"

namespace asyncbo {

/// Squared-exponential kernel hyperparameters. Bandwidths are per dimension
/// and measured in units of each dimension's width; scale and noise refer to
/// the standardized objective.
struct GpHyperparameters {
  std::vector<double> bandwidths;
  double scale = 1.0;
  double noise = 1e-2;
};

struct GpFitOptions {
  std::size_t starts = 4;
  std::size_t iterations = 50;    // coordinate line searches per start
  std::size_t golden_steps = 10;  // likelihood evaluations per line search
};

struct GpPosterior {
  Eigen::VectorXd mean;        // standardized units
  Eigen::MatrixXd covariance;  // standardized units
};

class GPModel {
 public:
  const GpHyperparameters& hyperparameters() const { return hyper_; }
  double log_marginal_likelihood() const { return log_likelihood_; }
  /// Likelihood at each multi-start initial point, in start order.
  const std::vector<double>& start_log_likelihoods() const { return start_log_likelihoods_; }
  /// Jitter added on top of the noise to make K + noise I factorizable.
  double jitter() const { return jitter_; }
  std::size_t size() const { return static_cast<std::size_t>(inputs_.rows()); }
  const SearchSpace& space() const { return space_; }

  double kernel(const Point& a, const Point& b) const;
  /// Noise-free kernel matrix over the training inputs.
  Eigen::MatrixXd kernel_matrix() const;

  /// Posterior mean in the objective's original units.
  double posterior_mean(const Point& p) const;
  /// Joint posterior of the latent function at `points`.
  GpPosterior posterior(const std::vector<Point>& points) const;

 private:
  friend GPModel fit_gp(const ObservationSet&, const SearchSpace&, RandomStream&,
                        const GpFitOptions&);
  explicit GPModel(SearchSpace space) : space_(std::move(space)) {}

  Eigen::RowVectorXd to_unit(const Point& p) const;
  Eigen::MatrixXd cross_kernel(const Eigen::MatrixXd& unit_points) const;

  SearchSpace space_;
  GpHyperparameters hyper_;
  Eigen::MatrixXd inputs_;  // n x d, unit-cube coordinates
  Eigen::VectorXd targets_; // standardized
  double y_mean_ = 0.0;
  double y_std_ = 1.0;
  Eigen::MatrixXd chol_;    // lower factor of K + (noise + jitter) I
  Eigen::VectorXd alpha_;
  double jitter_ = 0.0;
  double log_likelihood_ = 0.0;
  std::vector<double> start_log_likelihoods_;
};

/// Maximizes the log marginal likelihood over log-bandwidths, log-scale and
/// log-noise by multi-start coordinate-wise golden-section ascent.
/// PreconditionError for fewer than two observations; NumericalError when
/// the final kernel matrix cannot be factorized.
GPModel fit_gp(const ObservationSet& observed, const SearchSpace& space,
               RandomStream& rng, const GpFitOptions& options = {});

/// floor(max(2000, min(5, d) * sqrt(min(j, 1000)))).
std::size_t n_acq(std::size_t d, std::size_t j);

struct ThompsonDraw {
  std::vector<Point> candidates;
  Eigen::VectorXd values;  // one joint posterior sample at the candidates
  std::size_t best = 0;    // argmin of values
};

/// Largest candidate set for one joint posterior sample.
inline constexpr std::size_t kMaxThompsonCandidates = 2000;

/// Draws min(n_acq(d, j), kMaxThompsonCandidates) uniform candidates and one
/// joint posterior sample over them.
ThompsonDraw thompson_draw(const GPModel& gp, const SearchSpace& space, std::size_t j,
                           RandomStream& rng);

Point thompson_propose(const GPModel& gp, const SearchSpace& space, std::size_t j,
                       RandomStream& rng);

/// Asynchronous random search: a uniform draw, whatever has been observed.
Point propose_random(const SearchSpace& space, RandomStream& rng);

}  // namespace asyncbo
