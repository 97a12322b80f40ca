#pragma once

// Brute-force reference implementations used only by the tests. They work on
// std::set and plain loops so they share no code paths with the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "sumsetlab/intset.hpp"
#include "sumsetlab/rational.hpp"

namespace oracle {

using Set = std::set<std::int64_t>;

inline Set to_set(const sumsetlab::IntSet& s) { return {s.begin(), s.end()}; }

inline Set plus(const Set& a, const Set& b) {
    Set out;
    for (auto x : a)
        for (auto y : b) out.insert(x + y);
    return out;
}

inline std::int64_t plus_size(const Set& a, const std::vector<std::int64_t>& xs) {
    return static_cast<std::int64_t>(plus(a, Set(xs.begin(), xs.end())).size());
}

inline Set residues(const Set& a, std::int64_t m) {
    Set out;
    for (auto x : a) out.insert(((x % m) + m) % m);
    return out;
}

/// All k-subsets of v, lexicographic.
inline std::vector<std::vector<std::int64_t>> subsets(const std::vector<std::int64_t>& v, std::size_t k) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < v.size(); ++i) {
            cur.push_back(v[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline std::int64_t max_k(const Set& a, const Set& b, std::size_t k) {
    std::int64_t best = 0;
    for (const auto& xs : subsets({b.begin(), b.end()}, k)) best = std::max(best, plus_size(a, xs));
    return best;
}

/// E over b in B \ {max B} of |A + {min B, b, max B}|.
inline sumsetlab::Rational expected_triple(const Set& a, const Set& b) {
    const std::int64_t lo = *b.begin();
    const std::int64_t hi = *b.rbegin();
    std::int64_t total = 0;
    std::int64_t count = 0;
    for (auto x : b) {
        if (x == hi) continue;
        total += plus_size(a, {lo, x, hi});
        ++count;
    }
    return {total, count};
}

inline std::int64_t energy(const Set& s, std::int64_t m = 0) {
    std::int64_t count = 0;
    for (auto a : s)
        for (auto b : s)
            for (auto c : s)
                for (auto d : s) {
                    const std::int64_t diff = (a - b) - (c - d);
                    if (m == 0 ? diff == 0 : ((diff % m) + m) % m == 0) ++count;
                }
    return count;
}

/// Smallest g in [1, m] with g + S = S (mod m); g = m is the trivial subgroup.
inline std::int64_t stabilizer(const Set& s, std::int64_t m) {
    for (std::int64_t g = 1; g <= m; ++g) {
        Set shifted;
        for (auto x : s) shifted.insert((x + g) % m);
        if (shifted == s) return g;
    }
    return m;
}

/// Every start in [min A - L d, max A]; returns (best count, chosen start) where
/// ties go to the smallest start that is itself an element of A.
inline std::pair<std::int64_t, std::int64_t> best_window(const Set& a, std::int64_t d, std::int64_t len) {
    std::int64_t best = -1;
    for (std::int64_t s = *a.begin() - len * d; s <= *a.rbegin(); ++s) {
        std::int64_t c = 0;
        for (std::int64_t j = 0; j < len; ++j) c += a.count(s + j * d);
        best = std::max(best, c);
    }
    for (std::int64_t s = *a.begin() - len * d; s <= *a.rbegin(); ++s) {
        if (!a.count(s)) continue;
        std::int64_t c = 0;
        for (std::int64_t j = 0; j < len; ++j) c += a.count(s + j * d);
        if (c == best) return {best, s};
    }
    return {best, 0};
}

/// min over all progressions of difference d (any start, any length) of |A Δ P|.
inline std::int64_t best_any_length(const Set& a, std::int64_t d) {
    const auto n = static_cast<std::int64_t>(a.size());
    std::int64_t best = n + 1;
    const std::int64_t span = *a.rbegin() - *a.begin();
    for (std::int64_t s = *a.begin() - d; s <= *a.rbegin(); ++s)
        for (std::int64_t len = 1; len <= span / d + 2; ++len) {
            std::int64_t c = 0;
            for (std::int64_t j = 0; j < len; ++j) c += a.count(s + j * d);
            best = std::min(best, n + len - 2 * c);
        }
    return best;
}

} // namespace oracle
