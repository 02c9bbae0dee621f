#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace sonar {

// splitmix64, used for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter scheme for fanning one master seed out to independent streams:
// each (stream, counter) pair gets a seed that is a splitmix64 chain over
// the master seed. Stable across runs and platforms.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t counter = 0) {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ counter);
}

// FNV-1a, for naming seed streams by tag instead of magic numbers.
inline std::uint64_t stream_tag(std::string_view name) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Deterministic RNG. mt19937_64 has a standard-pinned output sequence; the
// distribution transforms are implemented here (not via std::*_distribution,
// whose sequences vary between standard libraries) so that seeded results
// are identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        auto v = static_cast<std::int64_t>(uniform() * static_cast<double>(span));
        if (v >= static_cast<std::int64_t>(span)) v = static_cast<std::int64_t>(span) - 1;
        return lo + v;
    }

    // Normal(mean, sigma) via Box-Muller; caches the second variate.
    double normal(double mean, double sigma) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + sigma * spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();  // guard log(0)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return mean + sigma * r * std::cos(theta);
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sonar
