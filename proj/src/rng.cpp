#include "sumsetlab/rng.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw DomainError("empty range");
    const auto width = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (width == 0) return static_cast<std::int64_t>(next());
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(width));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 a(seed);
    SplitMix64 b(a.next() ^ (index * 0xd1b54a32d192ed03ULL));
    return b.next();
}

std::vector<std::int64_t> sample_distinct(SplitMix64& rng, std::int64_t universe, std::int64_t count) {
    if (count < 0 || count > universe) throw DomainError("cannot sample that many distinct values");
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count * 2 >= universe) {
        std::vector<bool> taken(static_cast<std::size_t>(universe));
        for (std::int64_t j = universe - count; j < universe; ++j) {
            const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j) + 1));
            const std::int64_t pick = taken[static_cast<std::size_t>(t)] ? j : t;
            taken[static_cast<std::size_t>(pick)] = true;
        }
        for (std::int64_t v = 0; v < universe; ++v)
            if (taken[static_cast<std::size_t>(v)]) out.push_back(v);
        return out;
    }
    std::unordered_set<std::int64_t> taken;
    for (std::int64_t j = universe - count; j < universe; ++j) {
        const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j) + 1));
        const std::int64_t pick = taken.count(t) != 0 ? j : t;
        taken.insert(pick);
        out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sumsetlab
