#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gdd {

/// splitmix64 mixing step; the standard finalizer with full avalanche.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a stream seed from a master seed and up to two indices.
/// Used so that sweep cells and ensemble draws are reproducible and
/// independent of execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a = 0,
                                 std::uint64_t b = 0) {
    std::uint64_t s = master;
    std::uint64_t z = splitmix64(s);
    s = z ^ (a + 0x9e3779b97f4a7c15ULL);
    z = splitmix64(s);
    s = z ^ (b + 0xd1b54a32d192ed03ULL);
    return splitmix64(s);
}

/// Deterministic RNG wrapper. mt19937_64 has a standard-specified output
/// sequence; the uniform and gaussian transforms below are written out
/// explicitly because the std distributions are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; one value per call, the pair
    /// partner is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gdd
