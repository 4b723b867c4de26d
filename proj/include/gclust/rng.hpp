#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "gclust/errors.hpp"

namespace gclust {

/// Deterministic random source. Wraps std::mt19937_64 but implements all
/// distributions by hand so that sampled sequences are pinned by this code
/// alone, not by the standard library's unspecified distribution algorithms.
/// A single instance must not be shared across concurrent callers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_mix_(seed) {}

    /// Derive an independent stream for a sub-purpose. Streams for distinct
    /// tags (or distinct parent seeds) are decorrelated via splitmix64.
    Rng derive(std::uint64_t tag) const {
        std::uint64_t x = seed_mix_ + 0x9E3779B97F4A7C15ull * (tag + 1);
        x = splitmix64(x);
        return Rng(x, x);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw ArgumentError("uniform_index: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller (the cached twin keeps it one call
    /// per variate on average).
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Fisher-Yates permutation of 0..n-1.
    std::vector<std::uint32_t> permutation(std::size_t n) {
        std::vector<std::uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0u);
        for (std::size_t i = n; i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(idx[i - 1], idx[j]);
        }
        return idx;
    }

    /// Sample an index proportional to the (non-negative) weights.
    /// All-zero weights fall back to a uniform choice.
    std::size_t discrete(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) {
            if (w < 0.0 || !std::isfinite(w))
                throw ArgumentError("discrete: weights must be finite and non-negative");
            total += w;
        }
        if (total <= 0.0) return static_cast<std::size_t>(uniform_index(weights.size()));
        double target = uniform01() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (target < acc) return i;
        }
        return weights.size() - 1;
    }

private:
    Rng(std::uint64_t seed, std::uint64_t mix) : engine_(seed), seed_mix_(mix) {}

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
    std::uint64_t seed_mix_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace gclust
