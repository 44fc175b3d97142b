#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace aetf {

/// Derives an independent stream seed from (master, stream). splitmix64
/// finalizer, so per-trial randomness is a pure function of the pair and
/// results do not depend on evaluation order.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// mt19937_64 behind hand-rolled sampling. The standard pins the raw engine
/// sequence but not the distributions, so sampling is done here to keep
/// seeded runs identical across compilers.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform over [0, n), n >= 1. Rejection sampling, no modulo bias.
    int below(int n) {
        const uint64_t bound = static_cast<uint64_t>(n);
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t r;
        do {
            r = gen_();
        } while (r >= limit);
        return static_cast<int>(r % bound);
    }

    bool bernoulli(double p) { return next_unit() < p; }

    /// Fair ±1.
    int sign() { return (gen_() >> 63) ? 1 : -1; }

    /// First k entries of a uniformly shuffled [0, n). Order is random.
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < k; ++i) {
            const int j = i + below(n - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

    /// Fisher-Yates over the whole range.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            const int j = below(i + 1);
            std::swap(v[i], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace aetf
