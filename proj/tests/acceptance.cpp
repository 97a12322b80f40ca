// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit status 1 on any failure.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>
#include <string>
#include <vector>

#include "frozen_constants.hpp"
#include "sumsetlab/bitwindow.hpp"
#include "sumsetlab/experiments.hpp"
#include "sumsetlab/recovery.hpp"
#include "sumsetlab/rng.hpp"

using namespace sumsetlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Runs a criterion body; an escaping exception counts as a failure.
void criterion(int id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

double min_sweep_throughput = 1e300;

// ---------------------------------------------------------------- 1, 2

void exhaustive_suite() {
    const ExhaustiveDomain domain{12, 2, 5};
    SweepOptions opts;
    opts.budget = 1e9;
    opts.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const TheoremId ids[] = {TheoremId::Eq1, TheoremId::Eq2, TheoremId::Thm1, TheoremId::Thm4,
                             TheoremId::Lem5, TheoremId::Lem6, TheoremId::Thm7};
    bool ok = true;
    std::string detail;
    double total_seconds = 0;
    for (TheoremId id : ids) {
        const SweepReport r = verify_sweep(id, domain, opts);
        ok = ok && r.violation_count == 0 && r.instances_checked > 0;
        total_seconds += r.wall_seconds;
        min_sweep_throughput =
            std::min(min_sweep_throughput, static_cast<double>(r.instances_checked) / std::max(r.wall_seconds, 1e-9));
        detail += fmt("%s %lld/%lld met, %lld violations; ", to_string(id).c_str(),
                      static_cast<long long>(r.hypothesis_met), static_cast<long long>(r.instances_checked),
                      static_cast<long long>(r.violation_count));
    }
    detail += fmt("%.1fs", total_seconds);
    report(1, ok, detail);
}

void implication_suite() {
    SweepOptions opts;
    opts.budget = 1e9;
    opts.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const SweepReport r = verify_sweep(TheoremId::Thm3, ExhaustiveDomain{12, 3, 5}, opts);
    min_sweep_throughput =
        std::min(min_sweep_throughput, static_cast<double>(r.instances_checked) / std::max(r.wall_seconds, 1e-9));
    report(2, r.violation_count == 0 && r.hypothesis_met > 0,
           fmt("%lld instances, %lld meet the expectation bound, %lld exceptions",
               static_cast<long long>(r.instances_checked), static_cast<long long>(r.hypothesis_met),
               static_cast<long long>(r.violation_count)));
}

// ---------------------------------------------------------------- 3

std::vector<std::uint32_t> masks_of_size(int bits, int k) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << bits); ++m)
        if (std::popcount(m) == k) out.push_back(m);
    return out;
}

IntSet from_mask(std::uint32_t m) {
    std::vector<std::int64_t> v;
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1u) v.push_back(i);
    return IntSet::from_sorted(v);
}

void freiman_suite() {
    std::int64_t pairs = 0;
    std::int64_t eligible = 0;
    std::int64_t failures_here = 0;
    const auto t0 = Clock::now();
    for (int k = 3; k <= 6; ++k) {
        const auto masks = masks_of_size(16, k);
        for (auto ma : masks) {
            const IntSet a = from_mask(ma);
            for (auto mb : masks) {
                ++pairs;
                std::uint64_t sum = 0;
                for (int i = 0; i < 16; ++i)
                    if (mb >> i & 1u) sum |= static_cast<std::uint64_t>(ma) << i;
                const int r = std::popcount(sum) - (2 * k - 1);
                if (r > k - 3) continue;
                ++eligible;
                const IntSet b = from_mask(mb);
                try {
                    const RecoveryCertificate c = freiman_recover(a, b);
                    const bool good = c.P.difference() == c.Q.difference() && c.P.length() <= k + r &&
                                      c.Q.length() <= k + r && is_subset(a, ap_elements(c.P)) &&
                                      is_subset(b, ap_elements(c.Q));
                    if (!good) ++failures_here;
                } catch (const std::exception&) {
                    ++failures_here;
                }
            }
        }
    }
    report(3, failures_here == 0 && eligible > 0,
           fmt("%lld pairs, %lld with r <= k-3, %lld failures, %.1fs", static_cast<long long>(pairs),
               static_cast<long long>(eligible), static_cast<long long>(failures_here), seconds_since(t0)));
}

// ---------------------------------------------------------------- 4

std::int64_t log_uniform(SplitMix64& rng, std::int64_t lo, std::int64_t hi) {
    const double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    const double v = std::exp(std::log(static_cast<double>(lo)) + u * std::log(static_cast<double>(hi) / lo));
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(v), lo, hi);
}

void kernel_suite() {
    SplitMix64 rng(404);
    std::int64_t kernel_mismatch = 0;
    std::int64_t largest_a = 0;
    std::int64_t largest_range = 0;
    const auto t0 = Clock::now();
    for (int t = 0; t < 10000; ++t) {
        const std::int64_t na = log_uniform(rng, 1, 10000);
        const std::int64_t range = log_uniform(rng, std::max<std::int64_t>(na, 2), 10000000);
        const double cap = std::min({1e4, 2e6 / static_cast<double>(na), 1.28e8 / static_cast<double>(range)});
        const std::int64_t nb = log_uniform(rng, 1, std::max<std::int64_t>(1, static_cast<std::int64_t>(cap)));
        const std::int64_t range_b = std::max(nb, log_uniform(rng, 1, range));
        const IntSet a = translate(IntSet::from_sorted(sample_distinct(rng, range, na)), rng.between(-1000, 1000));
        const IntSet b = translate(IntSet::from_sorted(sample_distinct(rng, range_b, nb)), rng.between(-1000, 1000));
        if (!(sumset_bitset(a, b) == sumset_sorted_list(a, b))) ++kernel_mismatch;
        largest_a = std::max(largest_a, na);
        largest_range = std::max(largest_range, range);
    }
    const double kernel_seconds = seconds_since(t0);

    std::int64_t heuristic_mismatch = 0;
    for (int t = 0; t < 1000; ++t) {
        const IntSet b = IntSet::from_sorted(sample_distinct(rng, 30, rng.between(2, 10)));
        const IntSet a = IntSet::from_sorted(sample_distinct(rng, 30, rng.between(1, 12)));
        const std::int64_t k = rng.between(1, std::min<std::int64_t>(4, static_cast<std::int64_t>(b.size())));
        KSubsetOptions with;
        KSubsetOptions without;
        without.heuristic_first = false;
        const BoundReport x = max_k_translate(a, b, k, std::nullopt, with);
        const BoundReport y = max_k_translate(a, b, k, std::nullopt, without);
        if (!(x.lhs == y.lhs) || x.witness != y.witness) ++heuristic_mismatch;
    }
    report(4, kernel_mismatch == 0 && heuristic_mismatch == 0,
           fmt("kernels: 10000 instances (|A| up to %lld, range up to %lld), %lld mismatches, %.1fs; "
               "k-subset ordering: 1000 instances, %lld mismatches",
               static_cast<long long>(largest_a), static_cast<long long>(largest_range),
               static_cast<long long>(kernel_mismatch), kernel_seconds, static_cast<long long>(heuristic_mismatch)));
}

// ---------------------------------------------------------------- 5

// (x / c)^root <= eps, for x, c >= 0.
bool within(const BigRational& x, const BigRational& c, const BigRational& eps, unsigned root) {
    return pow_big(x / c, root) <= eps;
}

void pipeline_suite() {
    struct Config {
        std::int64_t n;
        Rational eps;
    };
    std::vector<Config> configs;
    for (const auto& e : {Rational(1, 10000), Rational(3, 10000), Rational(1, 1000)}) configs.push_back({10000, e});
    for (const auto& e : {Rational(1, 100000), Rational(3, 100000), Rational(1, 10000), Rational(3, 10000),
                          Rational(1, 1000)})
        configs.push_back({100000, e});
    const int per_config = 25;

    std::int64_t instances = 0;
    std::int64_t confirmed = 0;
    std::int64_t weak_bound_failures = 0;
    std::int64_t validation_failures = 0;
    std::int64_t vacuity_mismatches = 0;
    std::int64_t vacuous = 0;
    std::int64_t full_completed = 0;
    std::int64_t full_aborted = 0;
    std::int64_t full_inconsistent = 0;
    std::string abort_stages;
    const auto t0 = Clock::now();
    for (const auto& cfg : configs) {
        for (int s = 0; s < per_config; ++s) {
            InstanceFamily fam;
            fam.kind = FamilyKind::FlankedInterval;
            fam.n = cfg.n;
            fam.epsilon = cfg.eps;
            fam.seed = derive_seed(55, static_cast<std::uint64_t>(instances));
            const Instance inst = generate(fam);
            ++instances;
            const BigRational eps = to_big(cfg.eps);
            const BigRational n(cfg.n);
            const std::int64_t bound = floor_big((2 + eps) * n - 1).convert_to<std::int64_t>();
            const BoundReport hyp = sampled_translate_check(inst.a, inst.b, 4, bound, 1000, fam.seed);

            const RecoveryCertificate w = weak_stability_recover(inst.a, inst.b, eps);
            if (!validate_certificate(w, inst.a, inst.b)) ++validation_failures;
            const bool expect_vacuous = eps * pow_big(BigRational(16), 8) >= 1;
            if (w.vacuous != expect_vacuous) ++vacuity_mismatches;
            if (w.vacuous) ++vacuous;
            if (hyp.holds) {
                ++confirmed;
                const BigRational q_excess = BigRational(std::max<std::int64_t>(0, w.Q.length() - cfg.n));
                const bool q_ok = within(q_excess, 32 * n, eps, 4);
                const bool a_ok = within(BigRational(w.a_minus_p), 16 * n, eps, 8);
                if (!q_ok || !a_ok || !w.covers_B || !w.bounds_met()) ++weak_bound_failures;
            }

            try {
                const FullRecovery f = full_stability_recover(inst.a, inst.b, eps);
                ++full_completed;
                for (const RecoveryCertificate* c : {&f.weak, f.boost1 ? &*f.boost1 : nullptr,
                                                     f.boost2 ? &*f.boost2 : nullptr})
                    if (c != nullptr && !validate_certificate(*c, inst.a, inst.b)) ++full_inconsistent;
                const RecoveryCertificate& last = f.final_certificate();
                if (last.params.mu && *last.params.mu < 1 &&
                    BigRational(last.a_delta_p) > *last.params.mu * n)
                    ++full_inconsistent;
            } catch (const StageError& e) {
                ++full_aborted;
                const std::string st = to_string(e.stage());
                if (abort_stages.find(st) == std::string::npos) abort_stages += (abort_stages.empty() ? "" : ",") + st;
            }
        }
    }
    const bool ok = weak_bound_failures == 0 && validation_failures == 0 && vacuity_mismatches == 0 &&
                    full_inconsistent == 0 && confirmed > 0;
    report(5, ok,
           fmt("%lld instances, hypothesis confirmed on %lld, weak-bound failures %lld, validation failures %lld, "
               "vacuous %lld (flag mismatches %lld); full pipeline completed %lld, aborted %lld at [%s], "
               "inconsistent %lld; %.1fs",
               static_cast<long long>(instances), static_cast<long long>(confirmed),
               static_cast<long long>(weak_bound_failures), static_cast<long long>(validation_failures),
               static_cast<long long>(vacuous), static_cast<long long>(vacuity_mismatches),
               static_cast<long long>(full_completed), static_cast<long long>(full_aborted), abort_stages.c_str(),
               static_cast<long long>(full_inconsistent), seconds_since(t0)));
}

// ---------------------------------------------------------------- 6

void constants_suite() {
    bool formulas = true;
    const BigRational grid[] = {BigRational(0), BigRational(1, 1000), BigRational(1, 37), BigRational(1, 10),
                                BigRational(3, 17)};
    for (const auto& e : grid)
        for (const auto& a : grid)
            for (const auto& b : grid) {
                if (mu_formula(e, b) != 32768 * (e + b)) formulas = false;
                if (4 * a + b < 1 && nu_formula(e, a, b) != (e + e * e / (1 - a)) / (1 - 4 * a - b)) formulas = false;
            }
    const StabilityChain z = stability_constants(BigRational(0));
    const bool zeros = z.delta == 0 && z.mu1 == 0 && z.nu1 == 0 && z.mu2 == 0 && z.nu2 == 0;
    const StabilityChain c = stability_constants(parse_big_rational("1e-10"));
    const bool frozen_ok = c.feasible == frozen::eps_1e10::feasible && big_str(c.delta) == frozen::eps_1e10::delta &&
                           big_str(c.mu1) == frozen::eps_1e10::mu1 && big_str(c.nu1) == frozen::eps_1e10::nu1 &&
                           big_str(c.mu2) == frozen::eps_1e10::mu2 && big_str(c.nu2) == frozen::eps_1e10::nu2;
    report(6, formulas && zeros && frozen_ok,
           fmt("formulas %s, eps=0 zeros %s, eps=1e-10 frozen chain %s (delta=%.6g, feasible=%s)",
               formulas ? "exact" : "MISMATCH", zeros ? "ok" : "MISMATCH", frozen_ok ? "matches" : "MISMATCH",
               big_to_double(c.delta), c.feasible ? "yes" : "no"));
}

// ---------------------------------------------------------------- 7

// Band and margin frozen from the first oracle run (three mean 2.0002, four-minus-three 0.37).
constexpr double kThreeLo = 1.9;
constexpr double kThreeHi = 2.1;
constexpr double kFourMargin = 0.3;
constexpr double kMinApDistance = 0.25;

void strategy_gap_suite() {
    StrategyGapParams p;
    p.n = 10000;
    for (std::uint64_t i = 0; i < 100; ++i) p.seeds.push_back(derive_seed(1, i));
    p.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto t0 = Clock::now();
    const StrategyGapReport r = strategy_gap_experiment(p);
    const double secs = seconds_since(t0);
    const bool band = r.three_mean >= kThreeLo && r.three_mean <= kThreeHi;
    const bool margin = r.four_mean - r.three_mean >= kFourMargin;
    const bool dist = r.min_ap_distance >= kMinApDistance;
    report(7, band && margin && dist && secs <= 300,
           fmt("three-translate mean %.4f in [%.1f, %.1f]: %s; four-translate mean %.4f, margin %.4f >= %.2f: %s; "
               "min AP distance %.4f >= %.2f: %s; %.1fs",
               r.three_mean, kThreeLo, kThreeHi, band ? "yes" : "no", r.four_mean, r.four_mean - r.three_mean,
               kFourMargin, margin ? "yes" : "no", r.min_ap_distance, kMinApDistance, dist ? "yes" : "no", secs));
}

// ---------------------------------------------------------------- 8

void tightness_suite() {
    TightnessParams p;
    p.n = 5000;
    p.epsilons = {Rational(2, 100), Rational(4, 100), Rational(8, 100)};
    for (std::uint64_t i = 0; i < 20; ++i) p.seeds.push_back(derive_seed(8, i));
    p.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto t0 = Clock::now();
    const TightnessReport r = tightness_experiment(p);
    const auto [lo, hi] = std::minmax_element(r.mean_ratio.begin(), r.mean_ratio.end());
    const bool ok = r.mean_ratio.size() == 3 && *lo > 0 && *hi <= 2 * *lo;
    report(8, ok,
           fmt("mean ratios %.4f, %.4f, %.4f for eps 0.02, 0.04, 0.08; max/min %.4f <= 2; %.1fs", r.mean_ratio[0],
               r.mean_ratio[1], r.mean_ratio[2], *hi / *lo, seconds_since(t0)));
}

// ---------------------------------------------------------------- 9

void performance_suite() {
    SplitMix64 rng(909);
    const IntSet a = IntSet::from_sorted(sample_distinct(rng, 100000000, 1000000));
    std::vector<double> times;
    std::int64_t size = 0;
    for (int rep = 0; rep < 7; ++rep) {
        std::vector<std::int64_t> xs = sample_distinct(rng, 100000000, 4);
        const IntSet b = IntSet::from_sorted(xs);
        const auto t0 = Clock::now();
        const IntSet s = sumset(a, b, SumsetKernel::Bitset);
        times.push_back(seconds_since(t0) * 1000);
        size = static_cast<std::int64_t>(s.size());
    }
    std::sort(times.begin(), times.end());
    const double median_ms = times[times.size() / 2];
    const bool ok = median_ms <= 100 && min_sweep_throughput >= 1e5;
    report(9, ok,
           fmt("|A|=1e6 in [0,1e8), 4 translates, bitset median %.1f ms (max %.1f ms, |A+X|=%lld); "
               "slowest exhaustive sweep %.3g instances/s",
               median_ms, times.back(), static_cast<long long>(size), min_sweep_throughput));
}

} // namespace

int main() {
    std::printf("hardware threads: %u\n", std::thread::hardware_concurrency());
    criterion(1, exhaustive_suite);
    criterion(2, implication_suite);
    criterion(3, freiman_suite);
    criterion(4, kernel_suite);
    criterion(5, pipeline_suite);
    criterion(6, constants_suite);
    criterion(7, strategy_gap_suite);
    criterion(8, tightness_suite);
    criterion(9, performance_suite);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
