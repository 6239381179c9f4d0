#ifndef GCMCE_RNG_HPP
#define GCMCE_RNG_HPP

#include <cstdint>
#include <vector>

namespace gcmce {

// Counter-free splittable generator built on splitmix64. Every randomized
// operation in the library takes an explicit 64-bit seed; independent
// sub-streams are derived as hash(seed, index), so serial and parallel runs
// of the same experiment agree bit for bit. We do not use std::uniform_*
// distributions because their output is implementation-defined.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Derived generator for sub-stream `index` of `seed`.
    static Rng derive(std::uint64_t seed, std::uint64_t index) { return Rng(mix(seed, index)); }
    static Rng derive(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
        return Rng(mix(mix(seed, i), j));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound), bound >= 1. Rejection from a power-of-two
    // window keeps the draw unbiased and platform-independent.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~0ULL;
        if (std::uint64_t b = bound - 1; b < ~0ULL) {
            mask = b;
            mask |= mask >> 1;
            mask |= mask >> 2;
            mask |= mask >> 4;
            mask |= mask >> 8;
            mask |= mask >> 16;
            mask |= mask >> 32;
        }
        for (;;) {
            std::uint64_t v = next() & mask;
            if (v < bound) return v;
        }
    }

    bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from {0,...,n-1}, uniform over subsets; order is the
    // order of a partial Fisher-Yates pass.
    std::vector<std::uint32_t> sample_distinct(std::uint32_t n, std::uint32_t k) {
        std::vector<std::uint32_t> pool(n);
        for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<std::uint32_t> out;
        out.reserve(k);
        for (std::uint32_t i = 0; i < k && i < n; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

   private:
    std::uint64_t state_;
};

}  // namespace gcmce

#endif
