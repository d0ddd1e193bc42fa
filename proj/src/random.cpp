#include "asyncbo/random.hpp"

#include <algorithm>
#include <array>

namespace asyncbo {
namespace {

// FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RandomStream::Engine make_engine(std::uint64_t seed, std::uint64_t salt) {
  std::array<std::uint32_t, 4> words{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return RandomStream::Engine(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : engine_(make_engine(seed, 0)) {}

RandomStream::RandomStream(std::uint64_t seed, std::string_view name)
    : engine_(make_engine(seed, hash_name(name))) {}

double RandomStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double low, double high) {
  return std::clamp(low + (high - low) * uniform01(), low, high);
}

double RandomStream::normal() { return normal_(engine_); }

std::size_t RandomStream::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

RandomStream RandomStream::split(std::string_view name) {
  return RandomStream(engine_(), name);
}

}  // namespace asyncbo
