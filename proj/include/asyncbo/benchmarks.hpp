#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "asyncbo/random.hpp"
#include "asyncbo/search_space.hpp"

namespace asyncbo {

/// A black-box objective together with its simulated evaluation-time model.
/// Both callables receive externalized coordinates (integer dimensions
/// already rounded).
struct ObjectiveSpec {
  std::string name;
  SearchSpace space;
  std::function<double(std::span<const double>)> eval;
  std::function<double(std::span<const double>, RandomStream&)> duration;
};

/// Six-dimensional Hartmann function on [0, 1]^6. DomainError outside.
double hartmann6(std::span<const double> x);

/// h(x[0:6]) + h(x[6:12]) + h(x[12:18]) on [0, 1]^18.
double hartmann18(std::span<const double> x);

/// Global minimizer and minimum of hartmann6.
inline constexpr double kHartmann6Minimizer[6] = {0.20169, 0.150011, 0.476874,
                                                  0.275332, 0.311652, 0.6573};
inline constexpr double kHartmann6Minimum = -3.32237;

/// |z| with z ~ N(0, sigma^2), redrawn on an exact zero so durations stay
/// strictly positive. sigma = sqrt(pi / 2) gives mean one.
double halfnormal_duration(double sigma, RandomStream& rng);

/// sqrt(pi / 2): the half-normal scale whose mean is exactly one.
double unit_mean_halfnormal_sigma();

ObjectiveSpec make_hartmann6();
ObjectiveSpec make_hartmann18();

/// The six-dimensional MLP hyperparameter box: learning rate, momentum,
/// two hidden-layer widths (integer), two dropout rates.
SearchSpace mlp_search_space();

/// Deterministic stand-in for validation error over mlp_search_space():
/// 0.08 + 0.05 * (h(z) - h_min) / |h_min| with z the coordinates rescaled to
/// [0, 1]. Duration = base * (n1 + n2) / 1000 * half-normal(sqrt(pi / 2)).
ObjectiveSpec make_mlp_surrogate(double base_seconds = 1.0);

}  // namespace asyncbo
