#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "asyncbo/random.hpp"
#include "asyncbo/search_space.hpp"

namespace asyncbo {

/// Gaussian kernel truncated to [low, high] and renormalized there.
struct Kernel1D {
  double center = 0.0;
  double bandwidth = 1.0;
  double weight = 1.0;
  double low = 0.0;
  double high = 1.0;
};

/// Standard normal CDF and its complement, accurate in both tails.
double normal_cdf(double z);
double normal_sf(double z);

/// Probability mass of N(0, 1) on [a, b], computed from whichever tail
/// keeps full precision.
double standard_normal_mass(double a, double b);

/// Weighted mixture of truncated Gaussians sharing one support interval.
/// Weights are normalized to sum to one on construction.
class TruncatedGaussianMixture {
 public:
  explicit TruncatedGaussianMixture(std::vector<Kernel1D> kernels);

  double low() const { return low_; }
  double high() const { return high_; }
  std::span<const Kernel1D> kernels() const { return kernels_; }

  /// Density; zero outside [low, high].
  double pdf(double x) const;
  /// Log density; stays finite where the linear-space sum underflows.
  double log_pdf(double x) const;
  double sample(RandomStream& rng) const;

 private:
  double log_pdf_stable(double x) const;

  std::vector<Kernel1D> kernels_;
  double low_;
  double high_;
  // Per-kernel precomputed terms, structure-of-arrays for the pdf loop.
  std::vector<double> centers_;
  std::vector<double> inv_bandwidths_;
  std::vector<double> coefficients_;      // w / (h * mass * sqrt(2 pi))
  std::vector<double> log_coefficients_;
  std::vector<double> cumulative_weights_;
};

/// Product of independent per-dimension mixtures: the density behind both
/// l(x) and g(x).
class ParzenEstimator {
 public:
  /// Throws ShapeError if there is not one mixture per dimension and
  /// DomainError if a mixture's support differs from its dimension's bounds.
  ParzenEstimator(SearchSpace space, std::vector<TruncatedGaussianMixture> per_dim);

  /// One kernel per point per dimension plus a wide prior kernel at the
  /// domain midpoint, all weighted 1/(n+1). PreconditionError when `points`
  /// is empty; DomainError if a point lies outside `space`.
  static ParzenEstimator fit(std::span<const Point> points, const SearchSpace& space);

  const SearchSpace& space() const { return space_; }
  const TruncatedGaussianMixture& dimension(std::size_t k) const { return per_dim_[k]; }

  /// Sum of per-dimension log densities. DomainError for points outside the
  /// space.
  double log_pdf(const Point& p) const;
  Point sample(RandomStream& rng) const;

 private:
  SearchSpace space_;
  std::vector<TruncatedGaussianMixture> per_dim_;
};

/// Observation-kernel bandwidth for one dimension: s * n^(-1/5), s the sample
/// standard deviation, clipped to [1e-3 * width, width]. A single point has
/// no spread estimate and gets the full width.
double scott_bandwidth(std::span<const double> coords, double width);

}  // namespace asyncbo
