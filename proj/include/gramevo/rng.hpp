#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace gramevo {

// mt19937_64 with hand-pinned output transforms. The standard distribution
// classes are implementation-defined, which would break the byte-for-byte
// reproducibility contract of the experiment CSVs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent named stream derived from a master seed. seed_seq keeps
    // only 32 bits per entry, so both words of each value are passed.
    Rng(std::uint64_t master, std::string_view stream)
    {
        const std::uint64_t h = fnv1a(stream);
        std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                          static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
        engine_.seed(seq);
    }

    // Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_int(std::uint64_t bound) { return engine_() % bound; }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_range(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(uniform_int(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Box-Muller without caching: every call consumes exactly two uniforms.
    double normal(double mean, double stddev)
    {
        double u1 = uniform01();
        while (u1 <= 0.0)
            u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t raw() { return engine_(); }

private:
    static std::uint64_t fnv1a(std::string_view s)
    {
        std::uint64_t h = 1469598103934665603ull;
        for (const char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return h;
    }

    std::mt19937_64 engine_;
};

} // namespace gramevo
