#pragma once

// Seedable, splittable pseudo-random stream.
//
// xoshiro256** seeded through splitmix64. All derived quantities (uniform
// reals, bounded integers, shuffles, geometric skips) are computed here
// rather than through <random> distributions so that a (seed, stream) pair
// reproduces the same bits on every standard library.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace loosehc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

    /// Independent stream for trial `stream` of a run seeded with `master`.
    static Rng derive(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t s = master;
        std::uint64_t a = splitmix64(s);
        std::uint64_t t = stream ^ 0xD1B54A32D192ED03ULL;
        std::uint64_t b = splitmix64(t);
        return Rng(a ^ (b * 0xFF51AFD7ED558CCDULL) ^ (b >> 29));
    }

    /// Two-level derivation, e.g. (cell, trial).
    static Rng derive(std::uint64_t master, std::uint64_t outer, std::uint64_t inner) {
        std::uint64_t s = master ^ (outer * 0x9E3779B97F4A7C15ULL);
        std::uint64_t mixed = splitmix64(s);
        return derive(mixed, inner);
    }

    /// Child stream; advances this generator.
    Rng split() { return Rng(next() ^ 0x5851F42D4C957F2DULL); }

    void reseed(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next(); }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe to take the logarithm of.
    double uniform_open0() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire's multiply-and-reject.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        __uint128_t m = static_cast<__uint128_t>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<__uint128_t>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform01() < p;
    }

    /// Number of failures before the next success of a Bernoulli(p) sequence.
    /// Requires 0 < p < 1; `log_q` is log1p(-p).
    std::uint64_t geometric_skip(double log_q) {
        const double g = std::floor(std::log(uniform_open0()) / log_q);
        if (!(g < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(g);
    }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace loosehc
