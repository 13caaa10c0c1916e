#pragma once

#include <cstdint>
#include <utility>

namespace gdd {

/// Standard normal quantile, accurate to ~1e-13 (bisection + Newton on erfc).
double normal_quantile(double p);

/// Wilson score interval for a binomial proportion. Boundary cases return
/// exact 0/1 endpoints.
std::pair<double, double> wilson_ci(std::int64_t successes, std::int64_t shots,
                                    double confidence = 0.99);

} // namespace gdd
