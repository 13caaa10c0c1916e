#include "gdd/stats.hpp"

#include <cmath>
#include <stdexcept>

#include "gdd/error.hpp"

namespace gdd {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

} // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InputError("normal_quantile: p must be in (0, 1)");
    }
    double lo = -12.0, hi = 12.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    // Newton polish; the density is well conditioned this close to the root.
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        if (pdf < 1e-300) break;
        x -= (normal_cdf(x) - p) / pdf;
    }
    return x;
}

std::pair<double, double> wilson_ci(std::int64_t successes, std::int64_t shots,
                                    double confidence) {
    if (shots < 1) throw InputError("wilson_ci: shots must be >= 1");
    if (successes < 0 || successes > shots) {
        throw InputError("wilson_ci: successes must be in [0, shots]");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InputError("wilson_ci: confidence must be in (0, 1)");
    }
    const double z = normal_quantile(0.5 * (1.0 + confidence));
    const double n = static_cast<double>(shots);
    const double phat = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (phat + z2n / 2.0) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n)) / denom;
    double lo = center - half;
    double hi = center + half;
    if (successes == 0) lo = 0.0;
    if (successes == shots) hi = 1.0;
    if (lo < 0.0) lo = 0.0;
    if (hi > 1.0) hi = 1.0;
    return {lo, hi};
}

} // namespace gdd
