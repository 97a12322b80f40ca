#pragma once

#include <cstdint>
#include <vector>

namespace sumsetlab {

/// splitmix64. Seed 0 yields 0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by rejection; bound must be >= 1.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);

    bool coin() { return (next() >> 63) != 0; }

    template <class T> void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

  private:
    std::uint64_t state_;
};

/// Independent stream seed for item `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// `count` distinct values from [0, universe), ascending (Floyd's algorithm).
std::vector<std::int64_t> sample_distinct(SplitMix64& rng, std::int64_t universe, std::int64_t count);

} // namespace sumsetlab
