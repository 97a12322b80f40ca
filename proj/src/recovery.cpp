#include "sumsetlab/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sumsetlab/bounds.hpp"

namespace sumsetlab {

namespace mp = boost::multiprecision;

std::string to_string(RecoveryStage stage) {
    switch (stage) {
    case RecoveryStage::Freiman: return "Freiman";
    case RecoveryStage::Weak: return "Weak";
    case RecoveryStage::Boost1: return "Boost1";
    case RecoveryStage::Boost2: return "Boost2";
    }
    return "?";
}

namespace {

struct ClassMember {
    std::int64_t residue;
    std::int64_t value;
    bool operator<(const ClassMember& o) const {
        return residue != o.residue ? residue < o.residue : value < o.value;
    }
};

/// A's elements grouped by residue mod d, each class ascending.
std::vector<std::vector<std::int64_t>> residue_classes(const IntSet& a, std::int64_t d) {
    std::vector<std::vector<std::int64_t>> classes;
    if (d == 1) {
        classes.emplace_back(a.begin(), a.end());
        return classes;
    }
    std::vector<ClassMember> members;
    members.reserve(a.size());
    for (auto x : a) members.push_back({mod_floor(x, d), x});
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i == 0 || members[i].residue != members[i - 1].residue) classes.emplace_back();
        classes.back().push_back(members[i].value);
    }
    return classes;
}

std::int64_t ap_length_for(std::int64_t lo, std::int64_t hi, std::int64_t d) { return (hi - lo) / d + 1; }

void fill_counts(RecoveryCertificate& cert, const IntSet& a, const IntSet& b) {
    cert.covers_B = std::all_of(b.begin(), b.end(), [&](std::int64_t x) { return cert.Q.contains(x); });
    cert.a_minus_p = count_outside(a, cert.P);
    const std::int64_t common = static_cast<std::int64_t>(a.size()) - cert.a_minus_p;
    cert.a_delta_p = static_cast<std::int64_t>(a.size()) + cert.P.length() - 2 * common;
    cert.common_difference_equal = cert.P.difference() == cert.Q.difference();
}

std::string describe_doubling(std::int64_t doubled, std::int64_t base) {
    std::ostringstream os;
    os << "|S+S| = " << doubled << ", |S| = " << base;
    return os.str();
}

} // namespace

bool validate_certificate(const RecoveryCertificate& cert, const IntSet& a, const IntSet& b) {
    RecoveryCertificate copy = cert;
    fill_counts(copy, a, b);
    return copy.covers_B && cert.covers_B && copy.a_minus_p == cert.a_minus_p && copy.a_delta_p == cert.a_delta_p &&
           copy.common_difference_equal == cert.common_difference_equal && cert.common_difference_equal &&
           cert.a_delta_p == symm_diff_size(a, ap_elements(cert.P));
}

ApCover minimal_ap_cover(const IntSet& s) {
    if (s.empty()) throw DomainError("AP cover of empty set");
    if (s.size() == 1) return {ArithProgression(s.min(), 1, 1), true};
    std::int64_t g = 0;
    for (auto x : s) g = std::gcd(g, checked_sub(x, s.min()));
    const ArithProgression p(s.min(), g, ap_length_for(s.min(), s.max(), g));
    return {p, p.length() == static_cast<std::int64_t>(s.size())};
}

ApFit best_ap_approx(const IntSet& a, std::int64_t d, std::int64_t length, ApObjective objective) {
    if (a.empty()) throw DomainError("best_ap_approx over empty set");
    if (d < 1) throw DomainError("difference must be >= 1");
    if (length < 1) throw DomainError("length must be >= 1");
    const std::int64_t reach = checked_mul(length - 1, d);
    std::int64_t best_common = -1;
    std::int64_t best_start = 0;
    // Some optimal window starts at an element of A (slide it up until it
    // does), so scanning element-anchored windows finds the optimum.
    for (const auto& cls : residue_classes(a, d)) {
        std::size_t hi = 0;
        for (std::size_t lo = 0; lo < cls.size(); ++lo) {
            const std::int64_t top = checked_add(cls[lo], reach);
            if (hi < lo) hi = lo;
            while (hi < cls.size() && cls[hi] <= top) ++hi;
            const auto common = static_cast<std::int64_t>(hi - lo);
            if (common > best_common || (common == best_common && cls[lo] < best_start)) {
                best_common = common;
                best_start = cls[lo];
            }
        }
    }
    const auto n = static_cast<std::int64_t>(a.size());
    const std::int64_t cost = objective == ApObjective::SymmetricDifference ? n + length - 2 * best_common
                                                                            : n - best_common;
    return {ArithProgression(best_start, d, length), cost, best_common};
}

ApFit best_ap_any_length(const IntSet& a, std::int64_t d) {
    if (a.empty()) throw DomainError("best_ap_any_length over empty set");
    if (d < 1) throw DomainError("difference must be >= 1");
    // Window [x_i, x_j] in one class has gain 2c - L = f(j) - f(i) + 1 with
    // f(t) = 2t - p_t, p_t the position of x_t in units of d.
    std::int64_t best_gain = 0;
    std::int64_t best_len = 0;
    std::int64_t best_start = 0;
    std::int64_t best_common = 0;
    for (const auto& cls : residue_classes(a, d)) {
        const std::int64_t origin = cls.front();
        std::int64_t min_f = 0;
        std::size_t min_i = 0;
        for (std::size_t j = 0; j < cls.size(); ++j) {
            const std::int64_t pj = (cls[j] - origin) / d;
            const std::int64_t fj = 2 * static_cast<std::int64_t>(j) - pj;
            if (j == 0 || fj <= min_f) {
                min_f = fj;
                min_i = j;
            }
            const std::int64_t gain = fj - min_f + 1;
            const std::int64_t len = (cls[j] - cls[min_i]) / d + 1;
            const std::int64_t start = cls[min_i];
            const bool better = gain > best_gain || (gain == best_gain && (len < best_len ||
                                                                           (len == best_len && start < best_start)));
            if (best_len == 0 || better) {
                best_gain = gain;
                best_len = len;
                best_start = start;
                best_common = static_cast<std::int64_t>(j - min_i + 1);
            }
        }
    }
    return {ArithProgression(best_start, d, best_len), static_cast<std::int64_t>(a.size()) - best_gain, best_common};
}

RecoveryCertificate freiman_recover(const IntSet& a, const IntSet& b) {
    if (a.size() != b.size()) throw HypothesisError("Freiman recovery requires |A| = |B|");
    const auto k = static_cast<std::int64_t>(a.size());
    if (k < 3) throw HypothesisError("Freiman recovery requires |A| = |B| >= 3");
    const auto sum = static_cast<std::int64_t>(sumset(a, b).size());
    const std::int64_t r = sum - (2 * k - 1);
    if (r > k - 3) {
        throw HypothesisError("|A+B| = " + std::to_string(sum) + " gives r = " + std::to_string(r) +
                              " > k - 3 = " + std::to_string(k - 3));
    }
    // Any common difference of covering progressions divides every gap of A
    // and of B, so the joint gcd gives the shortest covers.
    std::int64_t g = 0;
    for (auto x : a) g = std::gcd(g, x - a.min());
    for (auto x : b) g = std::gcd(g, x - b.min());
    RecoveryCertificate cert;
    cert.stage = RecoveryStage::Freiman;
    cert.P = ArithProgression(a.min(), g, ap_length_for(a.min(), a.max(), g));
    cert.Q = ArithProgression(b.min(), g, ap_length_for(b.min(), b.max(), g));
    fill_counts(cert, a, b);
    cert.p_size_bound = k + r;
    cert.q_size_bound = k + r;
    cert.p_bound_met = cert.P.length() <= k + r;
    cert.q_bound_met = cert.Q.length() <= k + r;
    cert.a_bound_met = cert.a_minus_p == 0;
    if (!cert.bounds_met() || !validate_certificate(cert, a, b))
        throw StructureNotFound("Freiman certificate failed validation (r = " + std::to_string(r) + ")");
    return cert;
}

RecoveryCertificate weak_stability_recover(const IntSet& a, const IntSet& b, const BigRational& eps,
                                           WeakRecoveryInfo* info) {
    if (a.size() != b.size()) throw HypothesisError("weak stability requires |A| = |B|");
    if (a.empty()) throw DomainError("weak stability requires non-empty sets");
    if (eps < 0) throw DomainError("epsilon must be >= 0");
    const auto n = static_cast<std::int64_t>(a.size());
    const std::int64_t m = b.max() - b.min();

    RecoveryCertificate cert;
    cert.stage = RecoveryStage::Weak;
    cert.params.epsilon = eps;
    cert.params.delta = delta_of_epsilon(eps);

    std::int64_t h = 1;
    if (m == 0) {
        cert.Q = ArithProgression(b.min(), 1, 1);
    } else {
        const ResidueSet s = project_mod(translate(b, -b.min()), m);
        const ResidueSet t = residue_sumset(s, s);
        const Stabilizer stab = stabilizer(t);
        h = stab.generator;
        if (info != nullptr) {
            info->m = m;
            info->residue_count = static_cast<std::int64_t>(s.size());
            info->doubled_count = static_cast<std::int64_t>(t.size());
            info->stabilizer_generator = h;
        }
        const auto ss = static_cast<std::int64_t>(s.size());
        const auto ts = static_cast<std::int64_t>(t.size());
        if (h == m && !within_root_bound(to_big(ts - ss), 32, eps, 4, to_big(ss)))
            throw StructureNotFound("trivial stabilizer and large doubling: " + describe_doubling(ts, ss));
        cert.Q = ArithProgression(b.min(), h, m / h + 1);
        if (!std::all_of(b.begin(), b.end(), [&](std::int64_t x) { return cert.Q.contains(x); })) {
            throw StructureNotFound("B is not inside the lifted stabilizer progression (h = " + std::to_string(h) +
                                    "): " + describe_doubling(ts, ss));
        }
    }
    cert.P = best_ap_approx(a, cert.Q.difference(), cert.Q.length(), ApObjective::Outside).progression;
    fill_counts(cert, a, b);

    const BigRational big_n = to_big(n);
    cert.q_bound_met = within_root_bound(to_big(cert.Q.length() - n), 32, eps, 4, big_n);
    cert.a_bound_met = within_root_bound(to_big(cert.a_minus_p), 16, eps, 8, big_n);
    cert.vacuous = eps >= BigRational(1, BigInt(1) << 32);
    const double e = big_to_double(eps);
    cert.q_bound_approx = (1.0 + 32.0 * std::pow(e, 0.25)) * static_cast<double>(n);
    cert.a_bound_approx = 16.0 * std::pow(e, 0.125) * static_cast<double>(n);
    if (cert.vacuous) cert.note = "16*eps^(1/8) >= 1: the |A \\ P| bound is at least n";
    return cert;
}

RecoveryCertificate boost_stability(const IntSet& a, const IntSet& b, const ArithProgression& p,
                                    const ArithProgression& q, const BigRational& eps, const BigRational& alpha,
                                    const BigRational& beta, RecoveryStage stage) {
    if (eps < 0 || alpha < 0 || beta < 0) throw DomainError("parameters must be non-negative");
    if (alpha >= 1) throw DomainError("alpha must be < 1");
    if (4 * alpha + beta >= 1) throw DomainError("parameters violate 4*alpha + beta < 1");
    if (a.size() != b.size() || a.empty()) throw HypothesisError("boost requires |A| = |B| >= 1");
    const auto n = static_cast<std::int64_t>(a.size());
    const BigRational big_n = to_big(n);
    if (p.difference() != q.difference()) throw HypothesisError("P and Q must share their difference");
    if (!std::all_of(b.begin(), b.end(), [&](std::int64_t x) { return q.contains(x); }))
        throw HypothesisError("B is not contained in Q");
    if (to_big(count_outside(a, p)) > alpha * big_n) throw HypothesisError("|A \\ P| exceeds alpha*n");
    if (to_big(p.length()) > (1 + alpha) * big_n) throw HypothesisError("|P| exceeds floor((1+alpha)n)");
    if (to_big(q.length()) > (1 + beta) * big_n) throw HypothesisError("|Q| exceeds floor((1+beta)n)");

    const std::int64_t d = q.difference();
    const BigRational mu = mu_formula(eps, beta);
    const BigRational nu = nu_formula(eps, alpha, beta);

    RecoveryCertificate cert;
    cert.stage = stage;
    cert.params.epsilon = eps;
    cert.params.alpha = alpha;
    cert.params.beta = beta;
    cert.params.mu = mu;
    cert.params.nu = nu;
    cert.Q = ArithProgression(b.min(), d, ap_length_for(b.min(), b.max(), d));

    const BigInt q_cap = floor_big((1 + nu) * big_n);
    const BigInt p_len = floor_big((1 + mu) * big_n);
    if (p_len > BigInt(std::numeric_limits<std::int64_t>::max() / std::max<std::int64_t>(d, 1)))
        throw ArithmeticError("progression length floor((1+mu)n) out of range");
    cert.q_size_bound = q_cap.convert_to<std::int64_t>();
    cert.p_size_bound = p_len.convert_to<std::int64_t>();
    cert.P = best_ap_approx(a, d, *cert.p_size_bound, ApObjective::Outside).progression;
    fill_counts(cert, a, b);

    cert.q_bound_met = cert.Q.length() <= *cert.q_size_bound;
    cert.p_bound_met = cert.P.length() <= *cert.p_size_bound;
    cert.a_bound_met = to_big(cert.a_minus_p) <= mu * big_n;
    cert.vacuous = mu >= 1;
    cert.q_bound_approx = big_to_double((1 + nu) * big_n);
    cert.a_bound_approx = big_to_double(mu * big_n);
    if (cert.vacuous) cert.note = "mu >= 1: the |A \\ P'| bound is at least n";
    if (!cert.q_bound_met) cert.note += (cert.note.empty() ? "" : "; ") + std::string("|Q'| overshoots floor((1+nu)n)");
    return cert;
}

// ------------------------------------------------------- constants chain

BigRational delta_of_epsilon(const BigRational& eps) {
    if (eps < 0) throw DomainError("epsilon must be >= 0");
    return root_upper(eps * BigRational(BigInt(1) << 40), 8, kDeltaRootBits);
}

BigRational mu_formula(const BigRational& eps, const BigRational& beta) { return BigRational(1 << 15) * (eps + beta); }

BigRational nu_formula(const BigRational& eps, const BigRational& alpha, const BigRational& beta) {
    if (alpha == 1) throw DomainError("nu undefined at alpha = 1");
    const BigRational den = 1 - 4 * alpha - beta;
    if (den == 0) throw DomainError("nu undefined at 4*alpha + beta = 1");
    return (eps + eps * eps / (1 - alpha)) / den;
}

namespace {

bool stage_feasible(const BigRational& alpha, const BigRational& beta) { return alpha < 1 && 4 * alpha + beta < 1; }

StabilityChain evaluate_chain(const BigRational& eps) {
    StabilityChain ch;
    ch.epsilon = eps;
    ch.delta = delta_of_epsilon(eps);
    ch.delta_in_proof_regime = ch.delta < BigRational(1, 1024);
    auto safe_nu = [&](const BigRational& alpha, const BigRational& beta) {
        if (alpha == 1 || 4 * alpha + beta == 1) return BigRational(0);
        return nu_formula(eps, alpha, beta);
    };
    ch.mu1 = mu_formula(eps, ch.delta);
    ch.nu1 = safe_nu(ch.delta, ch.delta);
    ch.mu2 = mu_formula(eps, ch.nu1);
    ch.nu2 = safe_nu(ch.mu1, ch.nu1);
    if (!stage_feasible(ch.delta, ch.delta)) {
        ch.failed_stage = RecoveryStage::Boost1;
    } else if (!stage_feasible(ch.mu1, ch.nu1)) {
        ch.failed_stage = RecoveryStage::Boost2;
    }
    ch.feasible = !ch.failed_stage.has_value();
    if (ch.feasible && eps > 0) ch.c = std::max<BigRational>(ch.mu2 / eps, (ch.nu2 - eps) / (eps * eps));
    return ch;
}

} // namespace

std::pair<BigRational, BigRational> feasible_epsilon_bracket(int refine_steps) {
    // Every chain value is increasing in eps, so feasibility is monotone.
    int e = 1;
    while (!evaluate_chain(BigRational(1, BigInt(1) << e)).feasible) {
        if (++e > 4096) throw DomainError("no feasible epsilon found");
    }
    BigRational lo(1, BigInt(1) << e);
    BigRational hi(1, BigInt(1) << (e - 1));
    for (int i = 0; i < refine_steps; ++i) {
        const BigRational mid = (lo + hi) / 2;
        if (evaluate_chain(mid).feasible) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

StabilityChain stability_constants(const BigRational& eps) {
    if (eps < 0) throw DomainError("epsilon must be >= 0");
    StabilityChain ch = evaluate_chain(eps);
    if (!ch.feasible) ch.eps0_bracket = feasible_epsilon_bracket();
    return ch;
}

BigRational constants_c_over_grid(const BigRational& eps0, int octaves) {
    BigRational best = 0;
    bool any = false;
    for (int j = 0; j < octaves; ++j) {
        const BigRational scale(1, BigInt(1) << j);
        for (const BigRational& eps : {BigRational(eps0 * scale), BigRational(eps0 * scale * BigRational(3, 4))}) {
            const StabilityChain ch = evaluate_chain(eps);
            if (!ch.feasible || !ch.c) continue;
            if (!any || *ch.c > best) best = *ch.c;
            any = true;
        }
    }
    if (!any) throw DomainError("no feasible epsilon on the grid");
    return best;
}

FullRecovery full_stability_recover(const IntSet& a, const IntSet& b, const BigRational& eps) {
    FullRecovery out;
    try {
        out.weak = weak_stability_recover(a, b, eps);
    } catch (const std::exception& ex) {
        throw StageError(RecoveryStage::Weak, ex.what());
    }
    out.chain = evaluate_chain(eps);
    const BigRational& delta = out.chain.delta;
    try {
        out.boost1 = boost_stability(a, b, out.weak.P, out.weak.Q, eps, delta, delta, RecoveryStage::Boost1);
    } catch (const std::exception& ex) {
        throw StageError(RecoveryStage::Boost1, ex.what());
    }
    try {
        out.boost2 = boost_stability(a, b, out.boost1->P, out.boost1->Q, eps, *out.boost1->params.mu,
                                     *out.boost1->params.nu, RecoveryStage::Boost2);
    } catch (const std::exception& ex) {
        throw StageError(RecoveryStage::Boost2, ex.what());
    }
    out.boost2->params.delta = delta;
    if (out.chain.c) {
        out.boost2->params.c = *out.chain.c;
        const BigRational big_n = to_big(static_cast<std::int64_t>(a.size()));
        const BigRational& c = *out.chain.c;
        out.final_delta_within_c = to_big(out.boost2->a_delta_p) <= c * eps * big_n;
        out.final_q_within_c = to_big(out.boost2->Q.length()) <= (1 + eps + c * eps * eps) * big_n;
    }
    return out;
}

} // namespace sumsetlab
