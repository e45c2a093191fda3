#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace levelea {

// SplitMix64 finalizer, used to derive independent per-run seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Seed of the run_index-th stream of a base seed. Two mixing rounds keep
// streams of nearby (seed, index) pairs unrelated.
inline std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t run_index) {
    return mix64(mix64(base_seed) ^ (run_index * 0xa24baed4963ee407ull + 0x9552fcf2ull));
}

// Uniform double in [0,1) from the engine's raw 64-bit output. Distributions
// from <random> are implementation-defined, so everything random in this
// project is produced from engine words through the fixed maps below.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) for small n (modulo bias is below 2^-58 here).
inline int uniform_int(std::mt19937_64& rng, int n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

// Inverse-CDF sampler for Binomial(n, p), n <= 63.
class BinomialSampler {
public:
    BinomialSampler() = default;
    BinomialSampler(int n, double p) { reset(n, p); }

    void reset(int n, double p);
    int n() const { return n_; }
    double p() const { return p_; }

    int sample(std::mt19937_64& rng) const {
        const double u = uniform01(rng);
        int k = 0;
        while (k < n_ && u >= cdf_[k]) ++k;
        return k;
    }

private:
    int n_ = 0;
    double p_ = 0.0;
    std::array<double, 64> cdf_{};
};

// Uniformly random k-subset of {0..n-1} as a bitmask (Floyd's algorithm).
inline std::uint64_t random_subset(std::mt19937_64& rng, int n, int k) {
    std::uint64_t mask = 0;
    for (int i = n - k; i < n; ++i) {
        const int j = uniform_int(rng, i + 1);
        const std::uint64_t bit = 1ull << j;
        if (mask & bit) mask |= 1ull << i;
        else mask |= bit;
    }
    return mask;
}

// Mask with each of n bits set independently with probability given by the
// sampler's parameter: binomial count, then a uniform subset of that size.
inline std::uint64_t random_bernoulli_mask(std::mt19937_64& rng,
                                           const BinomialSampler& s) {
    return random_subset(rng, s.n(), s.sample(rng));
}

}  // namespace levelea
