#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumsetlab/big_rational.hpp"
#include "sumsetlab/intset.hpp"

namespace sumsetlab {

/// Parameters of the stability chain. Unset values are std::nullopt.
struct StabilityParams {
    BigRational epsilon = 0;
    std::optional<BigRational> delta;
    std::optional<BigRational> alpha;
    std::optional<BigRational> beta;
    std::optional<BigRational> mu;
    std::optional<BigRational> nu;
    std::optional<BigRational> c;
};

enum class RecoveryStage { Freiman, Weak, Boost1, Boost2 };
std::string to_string(RecoveryStage stage);

/// Progression pair certifying the structure of (A, B) at one stage.
struct RecoveryCertificate {
    RecoveryStage stage = RecoveryStage::Freiman;
    ArithProgression P{0, 1, 1};
    ArithProgression Q{0, 1, 1};
    bool common_difference_equal = false;
    bool covers_B = false;
    /// |A \ P| and |A Δ P|.
    std::int64_t a_minus_p = 0;
    std::int64_t a_delta_p = 0;
    StabilityParams params;

    /// Size the stage promises for |Q|, when it has an integral one.
    std::optional<std::int64_t> q_size_bound;
    /// Size the stage promises for |P|, when it has an integral one.
    std::optional<std::int64_t> p_size_bound;
    /// Measured sizes against the stage's bounds.
    bool q_bound_met = true;
    bool p_bound_met = true;
    bool a_bound_met = true;
    /// The numeric bound on |A \ P| is at least n, so it says nothing.
    bool vacuous = false;
    /// Display-only values of the irrational or large bounds.
    std::optional<double> q_bound_approx;
    std::optional<double> a_bound_approx;
    std::string note;

    [[nodiscard]] bool bounds_met() const { return q_bound_met && p_bound_met && a_bound_met; }
};

/// Recomputes covers_B, the counts, and the difference flag from the sets.
bool validate_certificate(const RecoveryCertificate& cert, const IntSet& a, const IntSet& b);

struct ApCover {
    ArithProgression progression;
    /// The set equals the progression.
    bool exact;
};

/// Shortest progression containing the set: start min, d = gcd of gaps.
ApCover minimal_ap_cover(const IntSet& s);

enum class ApObjective { SymmetricDifference, Outside };

struct ApFit {
    ArithProgression progression;
    /// |A Δ P| or |A \ P| depending on the objective.
    std::int64_t cost;
    std::int64_t common;
};

/// Best progression of difference d and length L against A; smallest start on ties.
ApFit best_ap_approx(const IntSet& a, std::int64_t d, std::int64_t length,
                     ApObjective objective = ApObjective::SymmetricDifference);

/// Best progression of difference d and any length, minimizing |A Δ P|;
/// ties broken by shorter length, then smaller start.
ApFit best_ap_any_length(const IntSet& a, std::int64_t d);

RecoveryCertificate freiman_recover(const IntSet& a, const IntSet& b);

struct WeakRecoveryInfo {
    std::int64_t m = 0;
    std::int64_t residue_count = 0;  // |π_m(B)|
    std::int64_t doubled_count = 0;  // |π_m(B) + π_m(B)|
    std::int64_t stabilizer_generator = 0;
};

RecoveryCertificate weak_stability_recover(const IntSet& a, const IntSet& b, const BigRational& eps,
                                           WeakRecoveryInfo* info = nullptr);

RecoveryCertificate boost_stability(const IntSet& a, const IntSet& b, const ArithProgression& p,
                                    const ArithProgression& q, const BigRational& eps, const BigRational& alpha,
                                    const BigRational& beta, RecoveryStage stage = RecoveryStage::Boost1);

/// The chain of constants for one epsilon.
struct StabilityChain {
    BigRational epsilon;
    BigRational delta;
    BigRational mu1, nu1, mu2, nu2;
    /// max(mu2 / eps, (nu2 - eps) / eps^2); set only when feasible and eps > 0.
    std::optional<BigRational> c;
    bool feasible = false;
    /// First stage whose parameter constraint fails, when infeasible.
    std::optional<RecoveryStage> failed_stage;
    /// delta < 2^-10, the regime the weak-stability construction is stated for.
    bool delta_in_proof_regime = false;
    /// Bracket [lo, hi] around the largest feasible epsilon, when infeasible.
    std::optional<std::pair<BigRational, BigRational>> eps0_bracket;
};

/// Bits of resolution used for the delta root approximation.
inline constexpr unsigned kDeltaRootBits = 96;

/// (2^40 eps)^(1/8), rounded up to a multiple of 2^-kDeltaRootBits.
BigRational delta_of_epsilon(const BigRational& eps);
BigRational nu_formula(const BigRational& eps, const BigRational& alpha, const BigRational& beta);
BigRational mu_formula(const BigRational& eps, const BigRational& beta);

/// Evaluates the chain by direct substitution; infeasible chains keep their
/// substituted values and carry the feasibility bracket.
StabilityChain stability_constants(const BigRational& eps);

/// Max over a geometric grid (two points per octave, `octaves` octaves down
/// from eps0) of the per-epsilon c.
BigRational constants_c_over_grid(const BigRational& eps0, int octaves);

/// Largest feasible epsilon, bracketed by bisection.
std::pair<BigRational, BigRational> feasible_epsilon_bracket(int refine_steps = 48);

struct FullRecovery {
    RecoveryCertificate weak;
    std::optional<RecoveryCertificate> boost1;
    std::optional<RecoveryCertificate> boost2;
    StabilityChain chain;
    /// Final |A Δ P| <= c·eps·n and |Q| <= (1 + eps + c·eps^2)·n, when c is known.
    std::optional<bool> final_delta_within_c;
    std::optional<bool> final_q_within_c;

    [[nodiscard]] const RecoveryCertificate& final_certificate() const {
        return boost2 ? *boost2 : (boost1 ? *boost1 : weak);
    }
};

/// Weak recovery followed by two boosts; throws StageError on a stage failure.
FullRecovery full_stability_recover(const IntSet& a, const IntSet& b, const BigRational& eps);

class StageError : public std::runtime_error {
  public:
    StageError(RecoveryStage stage, const std::string& what)
        : std::runtime_error(to_string(stage) + ": " + what), stage_(stage) {}
    [[nodiscard]] RecoveryStage stage() const { return stage_; }

  private:
    RecoveryStage stage_;
};

} // namespace sumsetlab
