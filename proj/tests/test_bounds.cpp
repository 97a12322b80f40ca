#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sumsetlab/bounds.hpp"
#include "sumsetlab/rng.hpp"

using namespace sumsetlab;

namespace {

IntSet interval(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> v;
    for (auto x = lo; x <= hi; ++x) v.push_back(x);
    return IntSet::from_sorted(v);
}

IntSet random_set(SplitMix64& rng, std::int64_t range, std::int64_t lo, std::int64_t hi) {
    return IntSet::from_sorted(sample_distinct(rng, range, rng.between(lo, hi)));
}

} // namespace

TEST_CASE("theorem ids parse case-insensitively") {
    CHECK(parse_theorem_id("thm1") == TheoremId::Thm1);
    CHECK(parse_theorem_id("Lem6") == TheoremId::Lem6);
    CHECK(parse_theorem_id("EQ2") == TheoremId::Eq2);
    CHECK_THROWS_AS(parse_theorem_id("thm9"), ParseError);
}

TEST_CASE("shift union bound") {
    BoundReport r = shift_union_bound({0, 1, 2, 3}, 3);
    CHECK((r.lhs == 7 && r.rhs == 7 && r.holds));
    r = shift_union_bound({0}, 1);
    CHECK((r.lhs == 2 && r.rhs == 2 && r.holds));
    r = shift_union_bound({0, 2, 4}, 4);
    CHECK((r.lhs == 5 && r.rhs == 5 && r.holds));
    CHECK_THROWS_AS(shift_union_bound({0}, 0), DomainError);
}

TEST_CASE("expected triple size") {
    CHECK(expected_triple_size({0, 1, 2, 3}, {0, 1, 2, 3}) == 7);
    CHECK(expected_triple_size({0, 5}, {0, 5}) == 3);
    CHECK(expected_triple_size({0, 1, 3}, {0, 1, 3}) == Rational(11, 2));
    CHECK_THROWS_AS(expected_triple_size({0}, {4}), HypothesisError);
}

TEST_CASE("max over k translates") {
    BoundReport r = max_k_translate(interval(0, 5), interval(0, 5), 4);
    CHECK(r.lhs == 11);
    CHECK(std::find(r.witness.begin(), r.witness.end(), 0) != r.witness.end());
    CHECK(std::find(r.witness.begin(), r.witness.end(), 5) != r.witness.end());
    CHECK(r.witness == std::vector<std::int64_t>{0, 1, 2, 5});
    CHECK(max_k_translate({0, 1, 2, 4}, {0, 1, 2, 4}, 3).lhs == 8);
    CHECK(max_k_translate({0, 10}, {0, 1}, 2).lhs == 4);
    CHECK_THROWS_AS(max_k_translate({0}, {0, 1}, 3), DomainError);
    KSubsetOptions tiny;
    tiny.budget = 10;
    CHECK_THROWS_AS(max_k_translate(interval(0, 40), interval(0, 40), 4, std::nullopt, tiny), BudgetExceeded);

    const BoundReport cut = max_k_translate(interval(0, 9), interval(0, 9), 3, 5);
    CHECK_FALSE(cut.exact);
    CHECK(cut.lhs > 5);
}

TEST_CASE("all k translates below a bound") {
    CHECK(min_k_translate_check(interval(0, 4), interval(0, 4), 3, 9).holds);
    const BoundReport v = min_k_translate_check({0, 1, 2, 4}, {0, 1, 2, 4}, 3, 7);
    CHECK_FALSE(v.holds);
    CHECK(v.lhs == 8);
    CHECK(v.witness.size() == 3);
    CHECK(min_k_translate_check({0, 1, 2, 4}, {0, 1, 2, 4}, 3, 8).holds);
}

TEST_CASE("technical bound examples") {
    BoundReport r = technical_bound({0, 1, 2, 3}, {0, 1, 2, 3});
    CHECK((r.lhs == 7 && r.rhs == 7 && r.holds));
    r = technical_bound({0, 2, 4, 6}, {0, 1, 2, 3});
    CHECK(r.lhs == Rational(26, 3));
    CHECK(r.rhs == 7);
    r = technical_bound({0, 3}, {0, 3});
    CHECK((r.lhs == 3 && r.rhs == 3));
    CHECK_THROWS_AS(technical_bound({0}, {0}), HypothesisError);
}

TEST_CASE("strengthened bound examples") {
    const IntSet s{0, 1, 2, 3, 4, 6};
    const BoundReport r = strengthened_bound(s, s);
    CHECK(r.lhs == Rational(59, 5));
    CHECK(r.rhs == Rational(58, 5));
    CHECK(r.holds);
    const BoundReport i = strengthened_bound(interval(0, 6), interval(0, 6));
    CHECK((i.lhs == 13 && i.rhs == 13));
    CHECK_THROWS_AS(strengthened_bound({0, 1}, {0, 1, 2}), DomainError);
}

TEST_CASE("fibre escape expectation examples") {
    BoundReport r = fibre_escape_expectation({0}, {0}, {0, 1, 2, 3});
    CHECK((r.lhs == Rational(2, 3) && r.rhs == Rational(2, 3)));
    r = fibre_escape_expectation({0, 3}, {0, 3}, {0, 1, 2, 3});
    CHECK((r.lhs == Rational(4, 3) && r.rhs == Rational(4, 3)));
    r = fibre_escape_expectation({0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3});
    CHECK(r.rhs == 0);
    CHECK(r.lhs >= 0);
}

TEST_CASE("pair expectation examples") {
    IntSet b = interval(0, 7);
    b = set_union(b, {17});
    const BoundReport r = pair_expected_triple_size({0, 17}, b);
    CHECK(r.lhs == Rational(169, 32));
    CHECK(r.rhs == 5);
    CHECK(r.hypothesis_met);
    CHECK(r.holds);
    CHECK_FALSE(pair_expected_triple_size({0, 1, 2, 3}, {0, 1, 2, 3}).hypothesis_met);
    const BoundReport far = pair_expected_triple_size({0, 1000}, set_union(interval(0, 8), {1000}));
    CHECK(far.lhs >= 5);
}

TEST_CASE("pair expectation matches a brute-force pair enumeration") {
    SplitMix64 rng(21);
    for (int t = 0; t < 40; ++t) {
        const IntSet a = random_set(rng, 30, 1, 5);
        const IntSet b = random_set(rng, 30, 2, 6);
        const auto sa = oracle::to_set(a);
        const std::int64_t lo = b.min();
        const std::int64_t hi = b.max();
        std::int64_t total = 0;
        std::int64_t pairs = 0;
        for (auto x : b)
            for (auto y : b) {
                if (x == hi || y == hi) continue;
                total += oracle::plus_size(sa, {lo, x, y});
                ++pairs;
            }
        CHECK(pair_expected_triple_size(a, b).lhs == Rational(total, pairs));
    }
}

TEST_CASE("additive energy") {
    CHECK(additive_energy(IntSet{0}) == 1);
    CHECK(additive_energy(IntSet{0, 1}) == 6);
    CHECK(additive_energy(IntSet{0, 1, 2}) == 19);
    SplitMix64 rng(22);
    for (int t = 0; t < 60; ++t) {
        const IntSet s = random_set(rng, 25, 1, 8);
        const auto e = additive_energy(s);
        const auto n = static_cast<std::int64_t>(s.size());
        CHECK(e == oracle::energy(oracle::to_set(s)));
        CHECK(e >= n * n);
        CHECK(e <= n * n * n);
        const std::int64_t m = rng.between(1, 12);
        const ResidueSet r = project_mod(s, m);
        CHECK(additive_energy(r) == oracle::energy(oracle::residues(oracle::to_set(s), m), m));
    }
    CHECK(additive_energy(IntSet{0, 1, 3}) == 2 * 9 - 3);
}

TEST_CASE("stabilizer") {
    Stabilizer s = stabilizer(ResidueSet(6, {0, 2, 4}));
    CHECK(s.generator == 2);
    CHECK(s.order == 3);
    CHECK(s.coset_union);
    CHECK(stabilizer(ResidueSet(5, {0, 1})).generator == 5);
    CHECK(stabilizer(ResidueSet(4, {0, 1, 2, 3})).generator == 1);
    SplitMix64 rng(23);
    for (int t = 0; t < 100; ++t) {
        const std::int64_t m = rng.between(1, 24);
        const auto picks = sample_distinct(rng, m, rng.between(1, m));
        CHECK(stabilizer(ResidueSet(m, picks)).generator == oracle::stabilizer({picks.begin(), picks.end()}, m));
    }
}

TEST_CASE("residue sumset") {
    CHECK(residue_sumset(ResidueSet(7, {0, 1}), ResidueSet(7, {0, 3})) == ResidueSet(7, {0, 1, 3, 4}));
    CHECK(residue_sumset(ResidueSet(5, {3, 4}), ResidueSet(5, {4})) == ResidueSet(5, {2, 3}));
    CHECK_THROWS_AS(residue_sumset(ResidueSet(5, {0}), ResidueSet(6, {0})), DomainError);
    CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("equality case") {
    BoundReport r = equality_case_check({0, 2, 4, 6}, {0, 2, 4, 6});
    CHECK(r.lhs == 7);
    CHECK(r.hypothesis_met);
    CHECK(*r.structure_ok);
    CHECK(r.holds);
    r = equality_case_check({0, 1, 2, 4}, {0, 1, 2, 4});
    CHECK(r.lhs > 7);
    CHECK_FALSE(r.hypothesis_met);
    r = equality_case_check({0, 1, 2}, {0, 2, 4});
    CHECK(r.holds);
    CHECK_THROWS_AS(equality_case_check({0, 1}, {0, 1}), HypothesisError);
}

TEST_CASE("oracles agree with brute force on random small instances") {
    SplitMix64 rng(24);
    for (int t = 0; t < 300; ++t) {
        const IntSet b = random_set(rng, 16, 2, 6);
        const IntSet a = random_set(rng, 16, static_cast<std::int64_t>(b.size()), 7);
        const auto sa = oracle::to_set(a);
        const auto sb = oracle::to_set(b);
        CHECK(expected_triple_size(a, b) == oracle::expected_triple(sa, sb));
        const auto k = static_cast<std::size_t>(std::min<std::int64_t>(3, static_cast<std::int64_t>(b.size())));
        const BoundReport mk = max_k_translate(a, b, static_cast<std::int64_t>(k));
        CHECK(mk.lhs == oracle::max_k(sa, sb, k));
        CHECK(oracle::plus_size(sa, mk.witness) == mk.lhs);
        KSubsetOptions plain;
        plain.heuristic_first = false;
        const BoundReport mk2 = max_k_translate(a, b, static_cast<std::int64_t>(k), std::nullopt, plain);
        CHECK(mk2.lhs == mk.lhs);
        CHECK(mk2.witness == mk.witness);
        const std::int64_t bound = static_cast<std::int64_t>(mk.lhs.num()) - rng.between(-1, 1);
        CHECK(min_k_translate_check(a, b, static_cast<std::int64_t>(k), bound).holds == (mk.lhs <= bound));
    }
}

TEST_CASE("bounds are translation invariant") {
    SplitMix64 rng(25);
    for (int t = 0; t < 100; ++t) {
        const IntSet b = random_set(rng, 20, 2, 6);
        const IntSet a = random_set(rng, 20, static_cast<std::int64_t>(b.size()), 7);
        const std::int64_t sa = rng.between(-40, 40);
        const std::int64_t sb = rng.between(-40, 40);
        const IntSet a2 = translate(a, sa);
        const IntSet b2 = translate(b, sb);
        CHECK(technical_bound(a, b).lhs == technical_bound(a2, b2).lhs);
        CHECK(technical_bound(a, b).rhs == technical_bound(a2, b2).rhs);
        CHECK(fibre_escape_expectation(a, a, b).lhs == fibre_escape_expectation(a2, a2, b2).lhs);
        CHECK(pair_expected_triple_size(a, b).lhs == pair_expected_triple_size(a2, b2).lhs);
        CHECK(triple_expectation_chain(a, b).holds == triple_expectation_chain(a2, b2).holds);
    }
}
