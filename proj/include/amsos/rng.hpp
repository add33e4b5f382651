#ifndef AMSOS_RNG_HPP
#define AMSOS_RNG_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace amsos {

/// SplitMix64 finalizer. Used to derive per-run seeds from a master seed.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for run `index` of a repeated benchmark:
/// mix64(master + index * 0x9E3779B97F4A7C15). Stable across platforms,
/// so any reported run can be re-executed individually.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + index * 0x9E3779B97F4A7C15ULL);
}

/// Deterministic random stream: mt19937_64 (bit-exact per the C++ standard)
/// plus a Box-Muller Gaussian transform built on its raw 64-bit output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Rejection over a power-of-two mask, no modulo bias.
    std::size_t uniform_below(std::size_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~0ULL >> std::countl_zero(static_cast<std::uint64_t>(n - 1));
        for (;;) {
            std::uint64_t v = next_u64() & mask;
            if (v < n) return static_cast<std::size_t>(v);
        }
    }

    /// Standard normal draw (Box-Muller, the spare value is cached).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace amsos

#endif  // AMSOS_RNG_HPP
