#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "asyncbo/random.hpp"

namespace asyncbo {

enum class ParamKind { continuous, integer_rounded };

const char* to_string(ParamKind kind);
ParamKind param_kind_from_string(const std::string& text);

struct ParamDomain {
  std::string name;
  double low = 0.0;
  double high = 1.0;
  ParamKind kind = ParamKind::continuous;

  double width() const { return high - low; }
  double midpoint() const { return 0.5 * (low + high); }
};

/// A point in the optimizer's internal (always continuous) coordinates.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  double operator[](std::size_t k) const { return coords[k]; }
  double& operator[](std::size_t k) { return coords[k]; }

  friend bool operator==(const Point&, const Point&) = default;
};

/// Bounded box domain. Immutable after construction.
class SearchSpace {
 public:
  /// Throws DomainError on empty dims, duplicate names, or invalid bounds.
  explicit SearchSpace(std::vector<ParamDomain> dims);

  /// [0, 1]^d with dimensions named `prefix0`, `prefix1`, ...
  static SearchSpace unit_cube(std::size_t d, const std::string& prefix = "x");

  std::size_t dim() const { return dims_.size(); }
  const ParamDomain& operator[](std::size_t k) const { return dims_[k]; }
  std::span<const ParamDomain> dims() const { return dims_; }

  /// Returns `p` unchanged when every coordinate lies in its closed
  /// interval. ShapeError on length mismatch, DomainError naming the
  /// offending dimension otherwise.
  const Point& validate(const Point& p) const;
  bool contains(const Point& p) const;

  Point sample_uniform(RandomStream& rng) const;

  /// Values handed to objective functions: integer-rounded dimensions are
  /// rounded half away from zero, continuous ones pass through untouched.
  std::vector<double> externalize(const Point& p) const;

 private:
  std::vector<ParamDomain> dims_;
};

}  // namespace asyncbo
