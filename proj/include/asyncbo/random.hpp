#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace asyncbo {

/// Seeded pseudo-random stream. Streams derived from the same seed with
/// different names are statistically independent, so callers can split one
/// run seed into per-purpose streams (proposals, durations, ...) whose draws
/// never interleave.
class RandomStream {
 public:
  using Engine = std::mt19937_64;

  explicit RandomStream(std::uint64_t seed);
  RandomStream(std::uint64_t seed, std::string_view name);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on [low, high]; never leaves the closed interval.
  double uniform(double low, double high);
  /// Standard normal.
  double normal();
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);

  /// Child stream keyed by `name`, seeded from this stream's next output.
  RandomStream split(std::string_view name);

  Engine& engine() { return engine_; }

 private:
  Engine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace asyncbo
