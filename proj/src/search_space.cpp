#include "asyncbo/search_space.hpp"

#include <cmath>
#include <set>

#include "asyncbo/errors.hpp"

namespace asyncbo {

const char* to_string(ParamKind kind) {
  return kind == ParamKind::continuous ? "continuous" : "integer";
}

ParamKind param_kind_from_string(const std::string& text) {
  if (text == "continuous" || text == "float") return ParamKind::continuous;
  if (text == "integer" || text == "int") return ParamKind::integer_rounded;
  throw DomainError("unknown parameter kind '" + text +
                    "' (expected continuous|float|integer|int)");
}

SearchSpace::SearchSpace(std::vector<ParamDomain> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DomainError("search space needs at least one dimension");
  std::set<std::string> names;
  for (const auto& d : dims_) {
    if (!names.insert(d.name).second) {
      throw DomainError("duplicate dimension name '" + d.name + "'");
    }
    if (!std::isfinite(d.low) || !std::isfinite(d.high) || !(d.low < d.high)) {
      throw DomainError("dimension '" + d.name + "' needs finite low < high");
    }
    if (d.kind == ParamKind::integer_rounded &&
        std::round(d.low) > std::round(d.high)) {
      throw DomainError("dimension '" + d.name + "' has no integer in range");
    }
  }
}

SearchSpace SearchSpace::unit_cube(std::size_t d, const std::string& prefix) {
  std::vector<ParamDomain> dims;
  dims.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    dims.push_back({prefix + std::to_string(k), 0.0, 1.0, ParamKind::continuous});
  }
  return SearchSpace(std::move(dims));
}

const Point& SearchSpace::validate(const Point& p) const {
  if (p.size() != dims_.size()) {
    throw ShapeError("point has " + std::to_string(p.size()) +
                     " coordinates, search space has " +
                     std::to_string(dims_.size()));
  }
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    const auto& d = dims_[k];
    if (!(p[k] >= d.low && p[k] <= d.high)) {
      throw DomainError("coordinate " + std::to_string(p[k]) +
                        " outside dimension '" + d.name + "' [" +
                        std::to_string(d.low) + ", " + std::to_string(d.high) +
                        "]");
    }
  }
  return p;
}

bool SearchSpace::contains(const Point& p) const {
  if (p.size() != dims_.size()) return false;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (!(p[k] >= dims_[k].low && p[k] <= dims_[k].high)) return false;
  }
  return true;
}

Point SearchSpace::sample_uniform(RandomStream& rng) const {
  Point p;
  p.coords.reserve(dims_.size());
  for (const auto& d : dims_) p.coords.push_back(rng.uniform(d.low, d.high));
  return p;
}

std::vector<double> SearchSpace::externalize(const Point& p) const {
  std::vector<double> out(validate(p).coords);
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    // std::round rounds halfway cases away from zero.
    if (dims_[k].kind == ParamKind::integer_rounded) out[k] = std::round(out[k]);
  }
  return out;
}

}  // namespace asyncbo
