#pragma once

#include <cstddef>

namespace asyncbo::detail {

// sum_i coefficients[i] * exp(-0.5 * ((x - centers[i]) * inv_bandwidths[i])^2)
//
// Lives in its own translation unit, built with vectorized exp; the
// summation order therefore differs from a plain sequential loop by
// rounding only.
double gaussian_kernel_sum(const double* centers, const double* inv_bandwidths,
                           const double* coefficients, std::size_t n, double x);

}  // namespace asyncbo::detail
