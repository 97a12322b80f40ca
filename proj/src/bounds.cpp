#include "sumsetlab/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "sumsetlab/bitwindow.hpp"
#include "sumsetlab/recovery.hpp"

namespace sumsetlab {

std::string to_string(TheoremId id) {
    switch (id) {
    case TheoremId::Eq1: return "Eq1";
    case TheoremId::Eq2: return "Eq2";
    case TheoremId::Thm1: return "Thm1";
    case TheoremId::Thm3: return "Thm3";
    case TheoremId::Thm4: return "Thm4";
    case TheoremId::Lem5: return "Lem5";
    case TheoremId::Lem6: return "Lem6";
    case TheoremId::Thm7: return "Thm7";
    }
    return "?";
}

TheoremId parse_theorem_id(const std::string& text) {
    std::string t;
    for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (auto id : {TheoremId::Eq1, TheoremId::Eq2, TheoremId::Thm1, TheoremId::Thm3, TheoremId::Thm4,
                    TheoremId::Lem5, TheoremId::Lem6, TheoremId::Thm7}) {
        std::string name = to_string(id);
        for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (name == t) return id;
    }
    throw ParseError("unknown theorem id: " + text);
}

Rational BoundReport::slack() const { return kind == BoundKind::Lower ? lhs - rhs : rhs - lhs; }

TranslateSelection TranslateSelection::from(const IntSet& b, std::vector<std::int64_t> translates) {
    if (translates.size() > kSmallOperand) throw DomainError("at most 8 translates");
    std::sort(translates.begin(), translates.end());
    if (std::adjacent_find(translates.begin(), translates.end()) != translates.end())
        throw DomainError("duplicate translate");
    for (auto x : translates)
        if (!b.contains(x)) throw DomainError("translate " + std::to_string(x) + " is not a member of B");
    TranslateSelection sel;
    sel.includes_min = !b.empty() && !translates.empty() && translates.front() == b.min();
    sel.includes_max = !b.empty() && !translates.empty() && translates.back() == b.max();
    sel.translates = std::move(translates);
    return sel;
}

double binomial_estimate(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(r);
}

namespace {

struct Span {
    std::int64_t min;
    std::int64_t max;
    std::int64_t m;
};

Span span_of(const IntSet& b) {
    if (b.empty()) throw DomainError("B must be non-empty");
    return {b.min(), b.max(), b.max() - b.min()};
}

void require_two(const IntSet& b) {
    if (b.size() < 2) throw HypothesisError("|B| must be at least 2 (expectation over B\\{max B} is empty)");
}

Rational ratio(std::int64_t num, std::int64_t den) { return Rational{num, den}; }

/// Sum over b in B\{max B} of |A + {min B, b, max B}|.
std::int64_t triple_sum(TranslateCounter& counter, const IntSet& b, bool skip_min) {
    const Span s = span_of(b);
    std::int64_t total = 0;
    for (std::size_t i = skip_min ? 1 : 0; i + 1 < b.size(); ++i) {
        const std::int64_t x[3] = {s.min, b[i], s.max};
        total += counter.count(x);
    }
    return total;
}

/// Lexicographic k-combination stepping over indices [0, n).
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::vector<std::size_t>> heuristic_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    auto push = [&](std::vector<std::size_t> v) {
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end() || v.size() != k || v.back() >= n) return;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    };
    if (k == 1) {
        push({0});
        push({n - 1});
        return out;
    }
    // Evenly spread, anchored at both extremes.
    std::vector<std::size_t> spread(k);
    for (std::size_t j = 0; j < k; ++j) spread[j] = (j * (n - 1) + (k - 1) / 2) / (k - 1);
    push(spread);
    // Extremes plus a block next to either end.
    std::vector<std::size_t> low{n - 1};
    std::vector<std::size_t> high{0};
    for (std::size_t j = 0; j + 1 < k; ++j) {
        low.push_back(j);
        high.push_back(n - 1 - j);
    }
    push(low);
    push(high);
    // Extremes plus interior points near the quartiles.
    std::vector<std::size_t> quart{0, n - 1};
    for (std::size_t j = 1; quart.size() < k; ++j) quart.push_back(std::min(n - 2, j * n / (k + 1)));
    push(quart);
    return out;
}

struct SearchResult {
    std::int64_t best = -1;
    std::vector<std::size_t> best_idx;
    bool stopped = false;
    std::int64_t stop_value = 0;
    std::vector<std::size_t> stop_idx;
};

SearchResult search_subsets(const IntSet& a, const IntSet& b, std::int64_t k,
                            std::optional<std::int64_t> threshold, const KSubsetOptions& opts) {
    if (a.empty() || b.empty()) throw DomainError("A and B must be non-empty");
    if (k < 1 || k > static_cast<std::int64_t>(b.size()))
        throw DomainError("k must satisfy 1 <= k <= |B|, got k=" + std::to_string(k));
    const auto n = b.size();
    const auto kk = static_cast<std::size_t>(k);
    const double count = binomial_estimate(static_cast<std::int64_t>(n), k);
    if (count > opts.budget)
        throw BudgetExceeded("k-subset enumeration of " + std::to_string(count) + " subsets exceeds budget", count);

    TranslateCounter counter(a);
    SearchResult res;
    std::vector<std::int64_t> xs(kk);
    auto consider = [&](const std::vector<std::size_t>& idx) {
        for (std::size_t j = 0; j < kk; ++j) xs[j] = b[idx[j]];
        const std::int64_t v = counter.count(xs);
        if (v > res.best || (v == res.best && idx < res.best_idx)) {
            res.best = v;
            res.best_idx = idx;
        }
        if (threshold && v > *threshold) {
            res.stopped = true;
            res.stop_value = v;
            res.stop_idx = idx;
            return true;
        }
        return false;
    };
    if (opts.heuristic_first)
        for (const auto& idx : heuristic_subsets(n, kk))
            if (consider(idx)) return res;
    std::vector<std::size_t> idx(kk);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    do {
        if (consider(idx)) return res;
    } while (next_combination(idx, n));
    return res;
}

std::vector<std::int64_t> pick(const IntSet& b, const std::vector<std::size_t>& idx) {
    std::vector<std::int64_t> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(b[i]);
    return out;
}

} // namespace

BoundReport shift_union_bound(const IntSet& a, std::int64_t m) {
    if (a.empty()) throw DomainError("A must be non-empty");
    if (m < 1) throw DomainError("m must be >= 1");
    TranslateCounter counter(a);
    const std::int64_t x[2] = {0, m};
    BoundReport r;
    r.theorem_id = TheoremId::Eq1;
    r.lhs = counter.count(x);
    r.rhs = static_cast<std::int64_t>(a.size() + project_mod(a, m).size());
    r.holds = r.lhs >= r.rhs;
    return r;
}

Rational expected_triple_size(const IntSet& a, const IntSet& b) {
    if (a.empty()) throw DomainError("A must be non-empty");
    require_two(b);
    TranslateCounter counter(a);
    return ratio(triple_sum(counter, b, false), static_cast<std::int64_t>(b.size()) - 1);
}

BoundReport max_k_translate(const IntSet& a, const IntSet& b, std::int64_t k, std::optional<std::int64_t> cutoff,
                            const KSubsetOptions& opts) {
    const SearchResult s = search_subsets(a, b, k, cutoff, opts);
    BoundReport r;
    r.theorem_id = TheoremId::Thm1;
    r.kind = BoundKind::Lower;
    r.hypothesis_met = a.size() >= b.size() && k >= std::min<std::int64_t>(3, static_cast<std::int64_t>(b.size()));
    r.rhs = static_cast<std::int64_t>(a.size() + b.size()) - 1;
    if (s.stopped) {
        r.lhs = s.stop_value;
        r.witness = pick(b, s.stop_idx);
        r.exact = false;
    } else {
        r.lhs = s.best;
        r.witness = pick(b, s.best_idx);
    }
    r.holds = r.lhs >= r.rhs;
    return r;
}

BoundReport min_k_translate_check(const IntSet& a, const IntSet& b, std::int64_t k, std::int64_t bound,
                                  const KSubsetOptions& opts) {
    const SearchResult s = search_subsets(a, b, k, bound, opts);
    BoundReport r;
    r.theorem_id = TheoremId::Thm3;
    r.kind = BoundKind::Upper;
    r.rhs = bound;
    if (s.stopped) {
        r.lhs = s.stop_value;
        r.witness = pick(b, s.stop_idx);
        r.holds = false;
        r.exact = false;
    } else {
        r.lhs = s.best;
        r.witness = pick(b, s.best_idx);
        r.holds = true;
    }
    return r;
}

BoundReport triple_expectation_chain(const IntSet& a, const IntSet& b) {
    require_two(b);
    const Rational e = expected_triple_size(a, b);
    const auto k = std::min<std::int64_t>(3, static_cast<std::int64_t>(b.size()));
    const BoundReport best = max_k_translate(a, b, k);
    BoundReport r;
    r.theorem_id = TheoremId::Eq2;
    r.lhs = e;
    r.rhs = static_cast<std::int64_t>(a.size() + b.size()) - 1;
    r.hypothesis_met = a.size() >= b.size();
    r.witness = best.witness;
    r.holds = best.lhs >= e && e >= r.rhs;
    return r;
}

BoundReport technical_bound(const IntSet& a, const IntSet& b) {
    require_two(b);
    const Span s = span_of(b);
    const auto na = static_cast<std::int64_t>(a.size());
    const auto nb = static_cast<std::int64_t>(b.size());
    const auto pa = static_cast<std::int64_t>(project_mod(a, s.m).size());
    BoundReport r;
    r.theorem_id = TheoremId::Thm4;
    r.lhs = expected_triple_size(a, b);
    r.rhs = Rational(na + pa) + Rational(na) * max(Rational(0), ratio(nb - 1 - pa, nb - 1));
    r.holds = r.lhs >= r.rhs;
    return r;
}

BoundReport strengthened_bound(const IntSet& a, const IntSet& b) {
    if (a.size() != b.size()) throw DomainError("strengthened bound requires |A| = |B|");
    require_two(b);
    const Span s = span_of(b);
    const auto n = static_cast<std::int64_t>(b.size());
    const auto pa = static_cast<std::int64_t>(project_mod(a, s.m).size());
    const int128 top = Rational::checked_add(
        Rational::checked_mul(int128{2} * pa - s.m, int128{s.m} - (n - 1)), int128{-1});
    BoundReport r;
    r.theorem_id = TheoremId::Thm7;
    r.lhs = expected_triple_size(a, b);
    r.rhs = Rational(2 * n - 1) + max(Rational(0), Rational(top, n - 1));
    r.holds = r.lhs >= r.rhs;
    return r;
}

BoundReport fibre_escape_expectation(const IntSet& a, const IntSet& a1, const IntSet& b) {
    if (a.empty() || a1.empty()) throw DomainError("A and A1 must be non-empty");
    require_two(b);
    const Span s = span_of(b);
    const ResidueSet pa = project_mod(a, s.m);
    const ResidueSet pb = project_mod(b, s.m);
    const std::vector<bool> in_pa = pa.mask();
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const std::int64_t shift = b[i] - s.min;
        for (auto x : a1)
            if (!in_pa[static_cast<std::size_t>(mod_floor(checked_add(x, shift), s.m))]) ++total;
    }
    const auto nb1 = static_cast<std::int64_t>(pb.size());
    BoundReport r;
    r.theorem_id = TheoremId::Lem5;
    r.lhs = ratio(total, static_cast<std::int64_t>(b.size()) - 1);
    r.rhs = Rational(static_cast<std::int64_t>(a1.size())) *
            max(Rational(0), ratio(nb1 - static_cast<std::int64_t>(pa.size()), nb1));
    r.holds = r.lhs >= r.rhs;
    return r;
}

BoundReport pair_expected_triple_size(const IntSet& a, const IntSet& b) {
    if (a.empty()) throw DomainError("A must be non-empty");
    require_two(b);
    const Span s = span_of(b);
    const auto pa = static_cast<std::int64_t>(project_mod(a, s.m).size());
    const auto pb = static_cast<std::int64_t>(project_mod(b, s.m).size());
    const auto nb = static_cast<std::int64_t>(b.size());
    TranslateCounter counter(a);
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        for (std::size_t j = 0; j + 1 < b.size(); ++j) {
            const std::int64_t x[3] = {s.min, b[i], b[j]};
            total += counter.count(x);
        }
    }
    BoundReport r;
    r.theorem_id = TheoremId::Lem6;
    r.lhs = ratio(total, (nb - 1) * (nb - 1));
    r.rhs = Rational(5 * static_cast<std::int64_t>(a.size()), 2);
    r.hypothesis_met = nb - 1 == pb && pb >= 8 * pa;
    r.holds = r.lhs >= r.rhs;
    return r;
}

BoundReport equality_case_check(const IntSet& a, const IntSet& b) {
    if (a.size() != b.size()) throw DomainError("equality case requires |A| = |B|");
    if (b.size() < 3) throw HypothesisError("equality case requires |B| >= 3");
    TranslateCounter counter(a);
    const auto n = static_cast<std::int64_t>(b.size());
    BoundReport r;
    r.theorem_id = TheoremId::Thm3;
    r.kind = BoundKind::Implication;
    r.lhs = ratio(triple_sum(counter, b, true), n - 2);
    r.rhs = 2 * n - 1;
    r.hypothesis_met = r.lhs <= r.rhs;
    const ApCover ca = minimal_ap_cover(a);
    const ApCover cb = minimal_ap_cover(b);
    r.structure_ok = ca.exact && cb.exact && ca.progression.difference() == cb.progression.difference();
    r.holds = !r.hypothesis_met || *r.structure_ok;
    return r;
}

std::int64_t additive_energy(const IntSet& s) {
    if (s.empty()) throw DomainError("energy of empty set");
    std::vector<std::int64_t> diffs;
    diffs.reserve(s.size() * s.size());
    for (auto x : s)
        for (auto y : s) diffs.push_back(checked_sub(x, y));
    std::sort(diffs.begin(), diffs.end());
    std::int64_t energy = 0;
    for (std::size_t i = 0; i < diffs.size();) {
        std::size_t j = i;
        while (j < diffs.size() && diffs[j] == diffs[i]) ++j;
        const auto r = static_cast<std::int64_t>(j - i);
        energy += r * r;
        i = j;
    }
    return energy;
}

std::int64_t additive_energy(const ResidueSet& s) {
    if (s.empty()) throw DomainError("energy of empty set");
    const std::int64_t m = s.modulus();
    std::unordered_map<std::int64_t, std::int64_t> counts;
    for (auto x : s.residues())
        for (auto y : s.residues()) ++counts[mod_floor(x - y, m)];
    std::int64_t energy = 0;
    for (const auto& [d, r] : counts) energy += r * r;
    return energy;
}

std::vector<std::int64_t> divisors(std::int64_t m) {
    if (m < 1) throw DomainError("divisors of non-positive integer");
    std::vector<std::int64_t> small;
    std::vector<std::int64_t> large;
    for (std::int64_t d = 1; d <= m / d; ++d) {
        if (m % d != 0) continue;
        small.push_back(d);
        if (d != m / d) large.push_back(m / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Stabilizer stabilizer(const ResidueSet& s) {
    if (s.empty()) throw DomainError("stabilizer of empty set");
    const std::int64_t m = s.modulus();
    const std::vector<bool> mask = s.mask();
    for (auto h : divisors(m)) {
        // |S| must be a multiple of the subgroup order for S to be a coset union.
        if (static_cast<std::int64_t>(s.size()) % (m / h) != 0) continue;
        bool stable = true;
        for (auto x : s.residues()) {
            if (!mask[static_cast<std::size_t>((x + h) % m)]) {
                stable = false;
                break;
            }
        }
        if (stable) return {h, m / h, true};
    }
    return {m, 1, true};
}

ResidueSet residue_sumset(const ResidueSet& s, const ResidueSet& t) {
    if (s.modulus() != t.modulus()) throw DomainError("residue sumset operands differ in modulus");
    const std::int64_t m = s.modulus();
    if (s.empty() || t.empty()) return ResidueSet(m, {});
    const double direct = static_cast<double>(s.size()) * static_cast<double>(t.size());
    const double shifted = static_cast<double>(std::min(s.size(), t.size())) * static_cast<double>(m) / 64.0;
    if (direct <= shifted) {
        std::vector<std::int64_t> out;
        out.reserve(s.size() * t.size());
        for (auto x : s.residues())
            for (auto y : t.residues()) out.push_back((x + y) % m);
        return ResidueSet(m, std::move(out));
    }
    // Shift-OR the larger operand by each element of the smaller one into a
    // window of width 2m, then fold the upper half back onto [0, m).
    const ResidueSet& big = s.size() >= t.size() ? s : t;
    const ResidueSet& small = s.size() >= t.size() ? t : s;
    BitWindow base(0, m);
    for (auto x : big.residues()) base.set(x);
    BitWindow acc(0, 2 * m);
    std::size_t since_check = 0;
    std::vector<std::int64_t> out;
    auto fold = [&]() {
        out.clear();
        for (std::int64_t j = 0; j < m; ++j)
            if (acc.test(j) || acc.test(j + m)) out.push_back(j);
    };
    for (auto y : small.residues()) {
        acc.or_shifted(base, y);
        if (++since_check == 64) {
            since_check = 0;
            if (acc.count() < m) continue;
            fold();
            if (static_cast<std::int64_t>(out.size()) == m) return ResidueSet(m, std::move(out));
        }
    }
    fold();
    return ResidueSet(m, std::move(out));
}

} // namespace sumsetlab
