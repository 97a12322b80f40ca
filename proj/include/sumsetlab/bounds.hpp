#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumsetlab/intset.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

enum class TheoremId { Eq1, Eq2, Thm1, Thm3, Thm4, Lem5, Lem6, Thm7 };

std::string to_string(TheoremId id);
/// Accepts "eq1", "Eq1", "thm1", ... ; throws ParseError otherwise.
TheoremId parse_theorem_id(const std::string& text);

/// Direction of the inequality a report checks.
///   Lower:       holds <=> lhs >= rhs
///   Upper:       holds <=> lhs <= rhs
///   Implication: hypothesis_met <=> lhs <= rhs, holds <=> !hypothesis_met || structure_ok
enum class BoundKind { Lower, Upper, Implication };

/// Outcome of one theorem check on one instance.
struct BoundReport {
    TheoremId theorem_id = TheoremId::Eq1;
    BoundKind kind = BoundKind::Lower;
    Rational lhs;
    Rational rhs;
    bool holds = false;
    bool hypothesis_met = true;
    /// False when a k-subset search stopped early at a cutoff.
    bool exact = true;
    /// Translates b_1..b_k achieving lhs, when the check selects some.
    std::vector<std::int64_t> witness;
    /// Structural verdict for implication-style checks.
    std::optional<bool> structure_ok;

    /// lhs - rhs for lower bounds, rhs - lhs for upper bounds.
    [[nodiscard]] Rational slack() const;
};

/// A chosen subset of B used as translates.
struct TranslateSelection {
    std::vector<std::int64_t> translates;
    bool includes_min = false;
    bool includes_max = false;

    /// Validates membership in B and distinctness (at most 8 translates).
    static TranslateSelection from(const IntSet& b, std::vector<std::int64_t> translates);
};

struct KSubsetOptions {
    /// Try {min, max}-anchored and extreme subsets before the lexicographic sweep.
    bool heuristic_first = true;
    /// Refuse enumerations with more subsets than this.
    double budget = 1e12;
};

/// Number of k-subsets of an n-set, as a double (saturates, never overflows).
double binomial_estimate(std::int64_t n, std::int64_t k);

// |A ∪ (A+m)| >= |A| + |π_m(A)|.
BoundReport shift_union_bound(const IntSet& a, std::int64_t m);

/// E_{b in B\{max B}} |A + {min B, b, max B}|, exactly.
Rational expected_triple_size(const IntSet& a, const IntSet& b);

/// max over k-subsets X of B of |A+X| with lexicographically smallest witness.
/// rhs is |A|+|B|-1. With a cutoff the search may stop once lhs > cutoff; the
/// report is then marked inexact.
BoundReport max_k_translate(const IntSet& a, const IntSet& b, std::int64_t k,
                            std::optional<std::int64_t> cutoff = std::nullopt, const KSubsetOptions& opts = {});

/// Whether every k-subset X of B has |A+X| <= bound. Stops at the first violation.
BoundReport min_k_translate_check(const IntSet& a, const IntSet& b, std::int64_t k, std::int64_t bound,
                                  const KSubsetOptions& opts = {});

/// The max >= E >= |A|+|B|-1 chain for |A| >= |B|.
BoundReport triple_expectation_chain(const IntSet& a, const IntSet& b);

BoundReport technical_bound(const IntSet& a, const IntSet& b);
BoundReport strengthened_bound(const IntSet& a, const IntSet& b);
BoundReport fibre_escape_expectation(const IntSet& a, const IntSet& a1, const IntSet& b);
BoundReport pair_expected_triple_size(const IntSet& a, const IntSet& b);
BoundReport equality_case_check(const IntSet& a, const IntSet& b);

/// Number of (s1,s2,s3,s4) with s1 - s2 = s3 - s4 (differences in Z).
std::int64_t additive_energy(const IntSet& s);
/// Same, with differences taken in Z_m.
std::int64_t additive_energy(const ResidueSet& s);

struct Stabilizer {
    /// Generator h | m of {g : g + S = S}; h = m means the trivial subgroup.
    std::int64_t generator;
    /// |<h>| = m / h.
    std::int64_t order;
    /// S is a union of cosets of <h>.
    bool coset_union;
};

Stabilizer stabilizer(const ResidueSet& s);

/// S + T in Z_m (both operands must share a modulus).
ResidueSet residue_sumset(const ResidueSet& s, const ResidueSet& t);

/// Divisors of m >= 1 in increasing order.
std::vector<std::int64_t> divisors(std::int64_t m);

} // namespace sumsetlab
