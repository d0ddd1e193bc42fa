#include "asyncbo/gp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "asyncbo/errors.hpp"

namespace asyncbo {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Log-space search box.
constexpr double kLogBandwidthMin = -4.605170185988091;  // log(1e-2)
constexpr double kLogBandwidthMax = 2.302585092994046;   // log(10)
constexpr double kLogScaleMin = -4.605170185988091;
constexpr double kLogScaleMax = 4.605170185988091;
constexpr double kLogNoiseMin = -13.815510557964274;     // log(1e-6)
constexpr double kLogNoiseMax = 0.0;
constexpr double kLineSearchHalfWidth = 2.0;

// Relative to the signal variance.
constexpr std::array<double, 8> kJitterLadder{0.0,  1e-10, 1e-9, 1e-8,
                                              1e-7, 1e-6,  1e-5, 1e-4};

struct Bounds {
  std::vector<double> low;
  std::vector<double> high;
};

Bounds search_bounds(std::size_t d) {
  Bounds b;
  b.low.assign(d, kLogBandwidthMin);
  b.high.assign(d, kLogBandwidthMax);
  b.low.push_back(kLogScaleMin);
  b.high.push_back(kLogScaleMax);
  b.low.push_back(kLogNoiseMin);
  b.high.push_back(kLogNoiseMax);
  return b;
}

GpHyperparameters from_log(const std::vector<double>& theta, std::size_t d) {
  GpHyperparameters h;
  h.bandwidths.resize(d);
  for (std::size_t k = 0; k < d; ++k) h.bandwidths[k] = std::exp(theta[k]);
  h.scale = std::exp(theta[d]);
  h.noise = std::exp(theta[d + 1]);
  return h;
}

// Lower triangle computed once and mirrored, so K is exactly symmetric.
Eigen::MatrixXd se_kernel(const Eigen::MatrixXd& x, const GpHyperparameters& h) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  Eigen::MatrixXd z = x;
  for (Eigen::Index k = 0; k < d; ++k) z.col(k) /= h.bandwidths[static_cast<std::size_t>(k)];
  Eigen::MatrixXd k_mat(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    k_mat(j, j) = h.scale;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double sq = (z.row(i) - z.row(j)).squaredNorm();
      k_mat(i, j) = h.scale * std::exp(-0.5 * sq);
      k_mat(j, i) = k_mat(i, j);
    }
  }
  return k_mat;
}

double log_likelihood_from_chol(const Eigen::LLT<Eigen::MatrixXd>& llt,
                                const Eigen::VectorXd& y, Eigen::VectorXd* alpha_out) {
  Eigen::VectorXd alpha = llt.solve(y);
  const Eigen::MatrixXd& l = llt.matrixLLT();
  double log_det_half = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) log_det_half += std::log(l(i, i));
  const double n = static_cast<double>(y.size());
  const double value = -0.5 * y.dot(alpha) - log_det_half - 0.5 * n * kLog2Pi;
  if (alpha_out) *alpha_out = std::move(alpha);
  return value;
}

double log_likelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                      const GpHyperparameters& h) {
  Eigen::MatrixXd k = se_kernel(x, h);
  k.diagonal().array() += h.noise;
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success) return kNegInf;
  const double value = log_likelihood_from_chol(llt, y, nullptr);
  return std::isfinite(value) ? value : kNegInf;
}

// Maximizes f on [a, b] with a fixed number of golden-section evaluations.
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, std::size_t evals) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (std::size_t i = 2; i < evals; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

Eigen::MatrixXd to_unit_matrix(const std::vector<Point>& pts, const SearchSpace& space) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(pts.size()),
                      static_cast<Eigen::Index>(space.dim()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    space.validate(pts[i]);
    for (std::size_t k = 0; k < space.dim(); ++k) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          (pts[i][k] - space[k].low) / space[k].width();
    }
  }
  return out;
}

// Factorizes `m` + jitter * scale * I, escalating the jitter as needed.
Eigen::LLT<Eigen::MatrixXd> factorize_with_jitter(const Eigen::MatrixXd& m, double scale,
                                                  double* jitter_used,
                                                  const char* what) {
  for (double rel : kJitterLadder) {
    Eigen::MatrixXd a = m;
    a.diagonal().array() += rel * scale;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      if (jitter_used) *jitter_used = rel * scale;
      return llt;
    }
  }
  throw NumericalError(std::string(what) + " is not positive definite even with jitter " +
                       std::to_string(kJitterLadder.back()) + " x scale");
}

}  // namespace

std::size_t n_acq(std::size_t d, std::size_t j) {
  const double term = static_cast<double>(std::min<std::size_t>(5, d)) *
                      std::sqrt(static_cast<double>(std::min<std::size_t>(j, 1000)));
  return static_cast<std::size_t>(std::floor(std::max(2000.0, term)));
}

GPModel fit_gp(const ObservationSet& observed, const SearchSpace& space,
               RandomStream& rng, const GpFitOptions& options) {
  if (observed.size() < 2) {
    throw PreconditionError("fitting a GP needs at least 2 observations, got " +
                            std::to_string(observed.size()));
  }
  const std::size_t d = space.dim();
  const std::size_t n = observed.size();

  GPModel model(space);
  std::vector<Point> xs;
  xs.reserve(n);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(observed[i].x);
    y(static_cast<Eigen::Index>(i)) = observed[i].y;
  }
  model.inputs_ = to_unit_matrix(xs, space);
  model.y_mean_ = y.mean();
  const double var = (y.array() - model.y_mean_).square().sum() / static_cast<double>(n);
  model.y_std_ = var > 0.0 ? std::sqrt(var) : 1.0;
  model.targets_ = (y.array() - model.y_mean_) / model.y_std_;

  const Bounds bounds = search_bounds(d);
  const std::size_t n_params = d + 2;
  auto objective = [&](const std::vector<double>& theta) {
    return log_likelihood(model.inputs_, model.targets_, from_log(theta, d));
  };

  std::vector<double> best_theta;
  double best_value = kNegInf;
  for (std::size_t s = 0; s < options.starts; ++s) {
    std::vector<double> theta(n_params);
    if (s == 0) {
      for (std::size_t k = 0; k < d; ++k) theta[k] = std::log(0.5);
      theta[d] = 0.0;
      theta[d + 1] = std::log(1e-2);
    } else {
      for (std::size_t k = 0; k < n_params; ++k) {
        theta[k] = rng.uniform(bounds.low[k], bounds.high[k]);
      }
    }
    double value = objective(theta);
    model.start_log_likelihoods_.push_back(value);

    for (std::size_t it = 0; it < options.iterations; ++it) {
      const std::size_t k = it % n_params;
      const double current = theta[k];
      const double a = std::max(bounds.low[k], current - kLineSearchHalfWidth);
      const double b = std::min(bounds.high[k], current + kLineSearchHalfWidth);
      auto along = [&](double t) {
        theta[k] = t;
        return objective(theta);
      };
      const auto [arg, val] = golden_section_max(along, a, b, options.golden_steps);
      // Ascent only: keep the current value unless the line search beat it.
      theta[k] = val > value ? arg : current;
      value = std::max(value, val);
    }
    if (value > best_value || best_theta.empty()) {
      best_value = value;
      best_theta = theta;
    }
  }

  model.hyper_ = from_log(best_theta, d);
  Eigen::MatrixXd k = se_kernel(model.inputs_, model.hyper_);
  k.diagonal().array() += model.hyper_.noise;
  const auto llt = factorize_with_jitter(k, model.hyper_.scale, &model.jitter_,
                                         "GP kernel matrix");
  model.chol_ = llt.matrixL();
  model.log_likelihood_ = log_likelihood_from_chol(llt, model.targets_, &model.alpha_);
  return model;
}

Eigen::RowVectorXd GPModel::to_unit(const Point& p) const {
  space_.validate(p);
  Eigen::RowVectorXd out(static_cast<Eigen::Index>(p.size()));
  for (std::size_t k = 0; k < p.size(); ++k) {
    out(static_cast<Eigen::Index>(k)) = (p[k] - space_[k].low) / space_[k].width();
  }
  return out;
}

double GPModel::kernel(const Point& a, const Point& b) const {
  const Eigen::RowVectorXd ua = to_unit(a);
  const Eigen::RowVectorXd ub = to_unit(b);
  double sq = 0.0;
  for (Eigen::Index k = 0; k < ua.size(); ++k) {
    const double z = (ua(k) - ub(k)) / hyper_.bandwidths[static_cast<std::size_t>(k)];
    sq += z * z;
  }
  return hyper_.scale * std::exp(-0.5 * sq);
}

Eigen::MatrixXd GPModel::kernel_matrix() const { return se_kernel(inputs_, hyper_); }

// n x m matrix of k(training_i, point_j).
Eigen::MatrixXd GPModel::cross_kernel(const Eigen::MatrixXd& unit_points) const {
  const Eigen::Index n = inputs_.rows();
  const Eigen::Index m = unit_points.rows();
  Eigen::MatrixXd zx = inputs_;
  Eigen::MatrixXd zp = unit_points;
  for (Eigen::Index k = 0; k < inputs_.cols(); ++k) {
    zx.col(k) /= hyper_.bandwidths[static_cast<std::size_t>(k)];
    zp.col(k) /= hyper_.bandwidths[static_cast<std::size_t>(k)];
  }
  Eigen::MatrixXd out(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, j) = hyper_.scale * std::exp(-0.5 * (zx.row(i) - zp.row(j)).squaredNorm());
    }
  }
  return out;
}

double GPModel::posterior_mean(const Point& p) const {
  const Eigen::MatrixXd ks = cross_kernel(to_unit(p));
  return y_mean_ + y_std_ * ks.col(0).dot(alpha_);
}

GpPosterior GPModel::posterior(const std::vector<Point>& points) const {
  const Eigen::MatrixXd unit = to_unit_matrix(points, space_);
  const Eigen::MatrixXd ks = cross_kernel(unit);
  GpPosterior out;
  out.mean = ks.transpose() * alpha_;
  const Eigen::MatrixXd v = chol_.triangularView<Eigen::Lower>().solve(ks);
  GpHyperparameters h = hyper_;
  out.covariance = se_kernel(unit, h);
  out.covariance.selfadjointView<Eigen::Lower>().rankUpdate(v.transpose(), -1.0);
  out.covariance.triangularView<Eigen::StrictlyUpper>() =
      out.covariance.transpose().triangularView<Eigen::StrictlyUpper>();
  return out;
}

ThompsonDraw thompson_draw(const GPModel& gp, const SearchSpace& space, std::size_t j,
                           RandomStream& rng) {
  const std::size_t n_candidates = std::min(n_acq(space.dim(), j), kMaxThompsonCandidates);
  ThompsonDraw draw;
  draw.candidates.reserve(n_candidates);
  for (std::size_t i = 0; i < n_candidates; ++i) {
    draw.candidates.push_back(space.sample_uniform(rng));
  }
  const GpPosterior post = gp.posterior(draw.candidates);
  const auto llt = factorize_with_jitter(post.covariance, gp.hyperparameters().scale,
                                         nullptr, "GP posterior covariance");
  Eigen::VectorXd z(static_cast<Eigen::Index>(n_candidates));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  draw.values = post.mean + llt.matrixL() * z;
  Eigen::Index best = 0;
  draw.values.minCoeff(&best);
  draw.best = static_cast<std::size_t>(best);
  return draw;
}

Point thompson_propose(const GPModel& gp, const SearchSpace& space, std::size_t j,
                       RandomStream& rng) {
  ThompsonDraw draw = thompson_draw(gp, space, j, rng);
  return std::move(draw.candidates[draw.best]);
}

Point propose_random(const SearchSpace& space, RandomStream& rng) {
  return space.sample_uniform(rng);
}

}  // namespace asyncbo
