#include "asyncbo/parzen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "asyncbo/errors.hpp"
#include "kernel_sum.hpp"

namespace asyncbo {
namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kLogSqrt2Pi = 0.9189385332046727418;
constexpr double kMinBandwidthFraction = 1e-3;

// Below this the linear-space sum may have lost relative precision.
constexpr double kUnderflowGuard = 1e-280;

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double standard_normal_mass(double a, double b) {
  if (a >= 0.0) return normal_sf(a) - normal_sf(b);
  if (b <= 0.0) return normal_cdf(b) - normal_cdf(a);
  return 1.0 - normal_cdf(a) - normal_sf(b);
}

TruncatedGaussianMixture::TruncatedGaussianMixture(std::vector<Kernel1D> kernels)
    : kernels_(std::move(kernels)) {
  if (kernels_.empty()) throw PreconditionError("mixture needs at least one kernel");
  low_ = kernels_.front().low;
  high_ = kernels_.front().high;
  if (!(low_ < high_)) throw DomainError("kernel support needs low < high");

  double total = 0.0;
  for (const auto& k : kernels_) {
    if (k.low != low_ || k.high != high_) {
      throw DomainError("all kernels of a mixture must share one support");
    }
    if (!(k.bandwidth > 0.0) || !(k.weight > 0.0)) {
      throw DomainError("kernel bandwidth and weight must be positive");
    }
    if (!(k.center >= low_ && k.center <= high_)) {
      throw DomainError("kernel center " + std::to_string(k.center) +
                        " outside its support");
    }
    total += k.weight;
  }

  const std::size_t n = kernels_.size();
  centers_.resize(n);
  inv_bandwidths_.resize(n);
  coefficients_.resize(n);
  log_coefficients_.resize(n);
  cumulative_weights_.resize(n);
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& k = kernels_[i];
    k.weight /= total;
    const double mass = standard_normal_mass((low_ - k.center) / k.bandwidth,
                                             (high_ - k.center) / k.bandwidth);
    if (!(mass > 0.0)) throw DomainError("truncated kernel has zero mass");
    centers_[i] = k.center;
    inv_bandwidths_[i] = 1.0 / k.bandwidth;
    log_coefficients_[i] =
        std::log(k.weight) - std::log(k.bandwidth) - std::log(mass) - kLogSqrt2Pi;
    coefficients_[i] = std::exp(log_coefficients_[i]);
    running += k.weight;
    cumulative_weights_[i] = running;
  }
  cumulative_weights_.back() = 1.0;
}

double TruncatedGaussianMixture::pdf(double x) const {
  if (!(x >= low_ && x <= high_)) return 0.0;
  return detail::gaussian_kernel_sum(centers_.data(), inv_bandwidths_.data(),
                                     coefficients_.data(), centers_.size(), x);
}

double TruncatedGaussianMixture::log_pdf(double x) const {
  if (!(x >= low_ && x <= high_)) return -std::numeric_limits<double>::infinity();
  const double direct = pdf(x);
  if (direct > kUnderflowGuard) return std::log(direct);
  return log_pdf_stable(x);
}

double TruncatedGaussianMixture::log_pdf_stable(double x) const {
  const std::size_t n = centers_.size();
  std::vector<double> terms(n);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x - centers_[i]) * inv_bandwidths_[i];
    terms[i] = log_coefficients_[i] - 0.5 * z * z;
    peak = std::max(peak, terms[i]);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

double TruncatedGaussianMixture::sample(RandomStream& rng) const {
  const double pick = rng.uniform01();
  const auto it = std::upper_bound(cumulative_weights_.begin(),
                                   cumulative_weights_.end(), pick);
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>(it - cumulative_weights_.begin()), kernels_.size() - 1);
  const Kernel1D& k = kernels_[i];

  // Inverse CDF restricted to [a, b] in standardized units. The lower half
  // inverts the CDF, the upper half the survival function, so neither tail
  // loses precision to cancellation against 1.
  const double a = (low_ - k.center) / k.bandwidth;
  const double b = (high_ - k.center) / k.bandwidth;
  const double v = rng.uniform01();
  const double u = normal_cdf(a) + v * (normal_cdf(b) - normal_cdf(a));
  double z;
  if (u <= 0.5) {
    z = 2.0 * u > 0.0 ? -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u) : a;
  } else {
    const double q = normal_sf(b) + (1.0 - v) * (normal_sf(a) - normal_sf(b));
    z = 2.0 * q > 0.0 ? std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q) : b;
  }
  return std::clamp(k.center + k.bandwidth * z, low_, high_);
}

ParzenEstimator::ParzenEstimator(SearchSpace space,
                                 std::vector<TruncatedGaussianMixture> per_dim)
    : space_(std::move(space)), per_dim_(std::move(per_dim)) {
  if (per_dim_.size() != space_.dim()) {
    throw ShapeError("estimator has " + std::to_string(per_dim_.size()) +
                     " mixtures for a " + std::to_string(space_.dim()) +
                     "-dimensional space");
  }
  for (std::size_t k = 0; k < per_dim_.size(); ++k) {
    if (per_dim_[k].low() != space_[k].low || per_dim_[k].high() != space_[k].high) {
      throw DomainError("mixture support differs from bounds of dimension '" +
                        space_[k].name + "'");
    }
  }
}

double scott_bandwidth(std::span<const double> coords, double width) {
  const double floor = kMinBandwidthFraction * width;
  const std::size_t n = coords.size();
  if (n < 2) return width;
  const double mean = std::accumulate(coords.begin(), coords.end(), 0.0) / n;
  double ss = 0.0;
  for (double c : coords) ss += (c - mean) * (c - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double h = sd * std::pow(static_cast<double>(n), -0.2);
  return std::clamp(h, floor, width);
}

ParzenEstimator ParzenEstimator::fit(std::span<const Point> points,
                                     const SearchSpace& space) {
  if (points.empty()) throw PreconditionError("cannot fit a Parzen estimator to no points");
  for (const auto& p : points) space.validate(p);

  const std::size_t n = points.size();
  const double weight = 1.0 / static_cast<double>(n + 1);
  std::vector<TruncatedGaussianMixture> per_dim;
  per_dim.reserve(space.dim());
  std::vector<double> coords(n);
  for (std::size_t k = 0; k < space.dim(); ++k) {
    const auto& dom = space[k];
    for (std::size_t i = 0; i < n; ++i) coords[i] = points[i][k];
    const double h = scott_bandwidth(coords, dom.width());

    std::vector<Kernel1D> kernels;
    kernels.reserve(n + 1);
    for (double c : coords) kernels.push_back({c, h, weight, dom.low, dom.high});
    kernels.push_back({dom.midpoint(), dom.width(), weight, dom.low, dom.high});
    per_dim.emplace_back(std::move(kernels));
  }
  return ParzenEstimator(space, std::move(per_dim));
}

double ParzenEstimator::log_pdf(const Point& p) const {
  space_.validate(p);
  double total = 0.0;
  for (std::size_t k = 0; k < per_dim_.size(); ++k) total += per_dim_[k].log_pdf(p[k]);
  return total;
}

Point ParzenEstimator::sample(RandomStream& rng) const {
  Point p;
  p.coords.reserve(per_dim_.size());
  for (const auto& m : per_dim_) p.coords.push_back(m.sample(rng));
  return p;
}

}  // namespace asyncbo
