#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/intset.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

enum class FamilyKind { Interval, AP, FlankedInterval, DoubledRandom, UniformRandom, ExhaustiveUniverse };

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(const std::string& text);

struct InstanceFamily {
    FamilyKind kind = FamilyKind::Interval;
    std::int64_t n = 1;
    Rational epsilon;
    /// UniformRandom draws from [0, universe_bound); ExhaustiveUniverse uses [0, universe_bound].
    std::int64_t universe_bound = 0;
    std::uint64_t seed = 0;
    /// Common difference for the AP family.
    std::int64_t difference = 1;
};

struct Instance {
    IntSet a;
    IntSet b;
};

/// Builds one instance. ExhaustiveUniverse is not a single instance; use
/// for_each_exhaustive_pair for it.
Instance generate(const InstanceFamily& family);

/// Width of each flank of a FlankedInterval instance, floor(2 eps n).
std::int64_t flank_width(std::int64_t n, const Rational& eps);

struct ExhaustiveDomain {
    std::int64_t universe = 12;
    std::int64_t k_min = 2;
    std::int64_t k_max = 5;
};

struct RandomDomain {
    std::int64_t count = 1000;
    std::int64_t size = 10;
    std::int64_t range = 40;
    std::uint64_t seed = 0;
};

using SweepDomain = std::variant<ExhaustiveDomain, RandomDomain>;

inline constexpr double kDefaultSweepBudget = 1e8;

/// Budget from SUMSETLAB_BUDGET when set, otherwise the default.
double sweep_budget_from_env(double fallback = kDefaultSweepBudget);

struct SweepOptions {
    double budget = kDefaultSweepBudget;
    int threads = 1;
    std::size_t max_violations = 100;
};

struct Violation {
    IntSet a;
    IntSet b;
    BoundReport report;
};

struct SweepReport {
    TheoremId theorem_id = TheoremId::Eq1;
    std::string mode;
    std::int64_t instances_checked = 0;
    std::int64_t hypothesis_met = 0;
    std::int64_t violation_count = 0;
    /// The first max_violations violations in instance order.
    std::vector<Violation> violations;
    bool violations_truncated = false;
    std::optional<Rational> min_slack;
    double wall_seconds = 0;
};

/// Whether the theorem needs |A| = |B| (with |B| >= 3 for Thm3).
bool theorem_requires_equal_sizes(TheoremId id);

/// Runs the theorem's oracle on one instance; empty when the instance is
/// outside the theorem's domain. Lem5 yields one report per A1 choice.
std::vector<BoundReport> check_instance(TheoremId id, const IntSet& a, const IntSet& b);

/// Number of instances an exhaustive sweep would visit.
double exhaustive_instance_count(const ExhaustiveDomain& domain, bool equal_sizes);

/// Calls f(a, b) for every pair with A, B ⊆ [0, U], k_min <= |B| <= |A| <= k_max.
void for_each_exhaustive_pair(const ExhaustiveDomain& domain, bool equal_sizes,
                              const std::function<void(const IntSet&, const IntSet&)>& f);

SweepReport verify_sweep(TheoremId id, const SweepDomain& domain, const SweepOptions& opts = {});

/// Runs body(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

// ------------------------------------------------------------ structure

struct StructuralDistance {
    std::int64_t difference = 1;
    ArithProgression P{0, 1, 1};
    ArithProgression Q{0, 1, 1};
    std::int64_t a_delta_p = 0;
    std::int64_t b_delta_q = 0;
    /// max(|A Δ P|, |B Δ Q|) / n.
    Rational distance;
};

/// Divisors of the gcd of the gaps of B, of A, and 1.
std::vector<std::int64_t> candidate_differences(const IntSet& a, const IntSet& b);

/// min over candidate d of max(|A Δ P|, |B Δ Q|) / |A|, P and Q of difference d.
StructuralDistance structural_distance(const IntSet& a, const IntSet& b);

/// max over 4-subsets of B of |A+X| by sampling, extremes and hill climbing.
struct SampledMax {
    std::int64_t value = 0;
    std::vector<std::int64_t> witness;
    bool exhaustive = false;
};

SampledMax sampled_max_translate(const IntSet& a, const IntSet& b, std::int64_t k, std::int64_t samples,
                                 std::uint64_t seed);

/// Whether every k-subset in a sample (plus extremes) satisfies |A+X| <= bound.
BoundReport sampled_translate_check(const IntSet& a, const IntSet& b, std::int64_t k, std::int64_t bound,
                                    std::int64_t samples, std::uint64_t seed);

// ------------------------------------------------------------ experiments

struct ConjectureSearchParams {
    std::int64_t n_min = 8;
    std::int64_t n_max = 12;
    Rational epsilon{1, 10};
    Rational delta_star{1, 4};
    std::int64_t trials = 100;
    std::uint64_t seed = 0;
    /// Check the hypothesis on all triples rather than a sample.
    bool exhaustive = false;
    std::int64_t samples = 1000;
    int threads = 1;
};

struct ConjectureTrial {
    std::int64_t index = 0;
    FamilyKind family = FamilyKind::Interval;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    bool hypothesis_holds = false;
    std::int64_t max_triple = 0;
    Rational distance;
    bool flagged = false;
    /// A flag that failed the exhaustive re-check.
    bool discarded = false;
};

struct ConjectureReport {
    ConjectureSearchParams params;
    std::vector<ConjectureTrial> trials;
    std::int64_t hypothesis_count = 0;
    std::int64_t flagged = 0;
    std::int64_t discarded = 0;
    std::optional<Rational> max_distance_under_hypothesis;
};

ConjectureReport conjecture_search(const ConjectureSearchParams& params);

struct StrategyGapParams {
    std::int64_t n = 10000;
    std::vector<std::uint64_t> seeds;
    std::int64_t pair_samples = 200;
    int threads = 1;
};

struct StrategyGapRow {
    std::uint64_t seed = 0;
    /// E_b |A+{0,b,n}| / n.
    Rational three_mean;
    /// max over sampled pairs of |A+{0,b,b',n}| / n.
    Rational four_max;
    /// min-AP distance of A, divided by n.
    Rational ap_distance;
};

struct StrategyGapReport {
    StrategyGapParams params;
    std::vector<StrategyGapRow> rows;
    double three_mean = 0;
    double four_mean = 0;
    double min_ap_distance = 0;
};

StrategyGapReport strategy_gap_experiment(const StrategyGapParams& params);

/// Same measurements on one fixed instance with B = [0, n].
StrategyGapRow strategy_gap_row(const IntSet& a, const IntSet& b, std::int64_t pair_samples, std::uint64_t seed);

struct TightnessParams {
    std::int64_t n = 5000;
    std::vector<Rational> epsilons{Rational(4, 100)};
    std::vector<std::uint64_t> seeds;
    std::int64_t samples = 2000;
    int threads = 1;
};

struct TightnessRow {
    Rational epsilon;
    std::uint64_t seed = 0;
    std::int64_t max_four = 0;
    bool exhaustive = false;
    std::int64_t min_delta = 0;
    /// (min |A Δ P| / n) / eps.
    Rational ratio;
};

struct TightnessReport {
    TightnessParams params;
    std::vector<TightnessRow> rows;
    /// Mean ratio per epsilon, in params order.
    std::vector<double> mean_ratio;
};

TightnessReport tightness_experiment(const TightnessParams& params);

} // namespace sumsetlab
