#pragma once

#include <cmath>
#include <cstddef>

#include "asyncbo/proposer.hpp"
#include "asyncbo/random.hpp"
#include "asyncbo/search_space.hpp"

namespace asyncbo::fixture {

// 40 grid points on [0, 1] scored by a quadratic bowl at 0.3; below = the
// four closest to 0.3.
inline ObservationSet bowl_1d() {
  ObservationSet d;
  for (int i = 0; i < 40; ++i) {
    const double x = (i + 0.5) / 40.0;
    d.append({Point{x}, (x - 0.3) * (x - 0.3)});
  }
  return d;
}

// Five tightly clustered good points at 0.7 and 45 spread-out bad ones:
// l is sharply peaked while g is close to flat.
inline ObservationSet peaked_l_1d() {
  ObservationSet d;
  for (int i = 0; i < 5; ++i) d.append({Point{0.7 + 0.001 * (i - 2)}, -1.0 + 0.01 * i});
  for (int i = 0; i < 45; ++i) {
    const double x = (i + 0.5) / 45.0;
    d.append({Point{x}, 1.0 + std::abs(x - 0.7)});
  }
  return d;
}

// n uniform points in `space` with arbitrary smooth values.
inline ObservationSet random_observations(const SearchSpace& space, std::size_t n,
                                          RandomStream& rng) {
  ObservationSet d;
  for (std::size_t i = 0; i < n; ++i) {
    Point x = space.sample_uniform(rng);
    double y = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double u = (x[k] - space[k].low) / space[k].width();
      y += std::sin(3.0 * u + static_cast<double>(k)) + 0.1 * rng.normal();
    }
    d.append({std::move(x), y});
  }
  return d;
}

}  // namespace asyncbo::fixture
