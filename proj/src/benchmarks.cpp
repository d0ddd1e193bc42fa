#include "asyncbo/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "asyncbo/errors.hpp"

namespace asyncbo {
namespace {

// Hartmann 6-D constants as tabulated in the Virtual Library of Simulation
// Experiments (Surjanovic & Bingham).
constexpr double kAlpha[4] = {1.0, 1.2, 3.0, 3.2};
constexpr double kA[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                             {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                             {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                             {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
constexpr double kP[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                             {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                             {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                             {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

void check_unit_box(std::span<const double> x, std::size_t d, const char* fn) {
  if (x.size() != d) {
    throw ShapeError(std::string(fn) + " expects " + std::to_string(d) +
                     " coordinates, got " + std::to_string(x.size()));
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!(x[j] >= 0.0 && x[j] <= 1.0)) {
      throw DomainError(std::string(fn) + ": coordinate " + std::to_string(j) + " = " +
                        std::to_string(x[j]) + " outside [0, 1]");
    }
  }
}

double hartmann6_unchecked(std::span<const double> x) {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double diff = x[j] - kP[i][j];
      inner += kA[i][j] * diff * diff;
    }
    total += kAlpha[i] * std::exp(-inner);
  }
  return -total;
}

}  // namespace

double hartmann6(std::span<const double> x) {
  check_unit_box(x, 6, "hartmann6");
  return hartmann6_unchecked(x);
}

double hartmann18(std::span<const double> x) {
  check_unit_box(x, 18, "hartmann18");
  return hartmann6_unchecked(x.subspan(0, 6)) + hartmann6_unchecked(x.subspan(6, 6)) +
         hartmann6_unchecked(x.subspan(12, 6));
}

double unit_mean_halfnormal_sigma() { return std::sqrt(std::numbers::pi / 2.0); }

double halfnormal_duration(double sigma, RandomStream& rng) {
  if (!(sigma > 0.0)) throw DomainError("half-normal scale must be positive");
  double t = 0.0;
  while (t == 0.0) t = std::abs(sigma * rng.normal());
  return t;
}

namespace {

ObjectiveSpec make_hartmann(std::size_t d, double (*fn)(std::span<const double>)) {
  return ObjectiveSpec{
      "hartmann" + std::to_string(d), SearchSpace::unit_cube(d), fn,
      [](std::span<const double>, RandomStream& rng) {
        return halfnormal_duration(unit_mean_halfnormal_sigma(), rng);
      }};
}

}  // namespace

ObjectiveSpec make_hartmann6() { return make_hartmann(6, &hartmann6); }

ObjectiveSpec make_hartmann18() { return make_hartmann(18, &hartmann18); }

SearchSpace mlp_search_space() {
  return SearchSpace({{"learning_rate", 1e-3, 0.2, ParamKind::continuous},
                      {"momentum", 0.8, 0.99, ParamKind::continuous},
                      {"hidden1", 50.0, 500.0, ParamKind::integer_rounded},
                      {"hidden2", 50.0, 500.0, ParamKind::integer_rounded},
                      {"dropout1", 0.0, 0.8, ParamKind::continuous},
                      {"dropout2", 0.0, 0.8, ParamKind::continuous}});
}

ObjectiveSpec make_mlp_surrogate(double base_seconds) {
  if (!(base_seconds > 0.0)) throw DomainError("duration base must be positive");
  SearchSpace space = mlp_search_space();
  auto eval = [space](std::span<const double> x) {
    if (x.size() != space.dim()) throw ShapeError("mlp-surrogate expects 6 coordinates");
    double z[6];
    for (std::size_t k = 0; k < 6; ++k) {
      z[k] = std::clamp((x[k] - space[k].low) / space[k].width(), 0.0, 1.0);
    }
    const double h = hartmann6_unchecked(z);
    return 0.08 + 0.05 * (h - kHartmann6Minimum) / -kHartmann6Minimum;
  };
  auto duration = [base_seconds](std::span<const double> x, RandomStream& rng) {
    const double size_factor = (x[2] + x[3]) / 1000.0;
    return base_seconds * size_factor *
           halfnormal_duration(unit_mean_halfnormal_sigma(), rng);
  };
  return ObjectiveSpec{"mlp-surrogate", std::move(space), std::move(eval),
                       std::move(duration)};
}

}  // namespace asyncbo
