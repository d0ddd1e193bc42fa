#include "kernel_sum.hpp"

#include <cmath>

namespace asyncbo::detail {

__attribute__((target_clones("avx2", "default"))) double gaussian_kernel_sum(
    const double* centers, const double* inv_bandwidths, const double* coefficients,
    std::size_t n, double x) {
  double sum = 0.0;
#pragma omp simd reduction(+ : sum)
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x - centers[i]) * inv_bandwidths[i];
    sum += coefficients[i] * std::exp(-0.5 * z * z);
  }
  return sum;
}

}  // namespace asyncbo::detail
