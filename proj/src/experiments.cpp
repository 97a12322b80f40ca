#include "sumsetlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cctype>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <thread>

#include "sumsetlab/bitwindow.hpp"
#include "sumsetlab/errors.hpp"
#include "sumsetlab/recovery.hpp"
#include "sumsetlab/rng.hpp"

namespace sumsetlab {

std::string to_string(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::Interval: return "Interval";
    case FamilyKind::AP: return "AP";
    case FamilyKind::FlankedInterval: return "FlankedInterval";
    case FamilyKind::DoubledRandom: return "DoubledRandom";
    case FamilyKind::UniformRandom: return "UniformRandom";
    case FamilyKind::ExhaustiveUniverse: return "ExhaustiveUniverse";
    }
    return "?";
}

FamilyKind parse_family_kind(const std::string& text) {
    std::string key;
    for (char c : text)
        if (c != '-' && c != '_') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (auto k : {FamilyKind::Interval, FamilyKind::AP, FamilyKind::FlankedInterval, FamilyKind::DoubledRandom,
                   FamilyKind::UniformRandom, FamilyKind::ExhaustiveUniverse}) {
        std::string name;
        for (char c : to_string(k)) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (name == key) return k;
    }
    if (key == "flanked") return FamilyKind::FlankedInterval;
    if (key == "doubled") return FamilyKind::DoubledRandom;
    if (key == "uniform") return FamilyKind::UniformRandom;
    throw ParseError("unknown family: " + text);
}

std::int64_t flank_width(std::int64_t n, const Rational& eps) {
    const Rational w = Rational(2) * eps * Rational(n);
    return w.floor();
}

namespace {

std::vector<std::int64_t> range_vec(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(hi - lo));
    std::iota(v.begin(), v.end(), lo);
    return v;
}

Instance flanked_interval(std::int64_t n, const Rational& eps, std::uint64_t seed) {
    if (eps <= Rational(0)) throw DomainError("FlankedInterval requires eps > 0");
    const std::int64_t w = flank_width(n, eps);
    if (w < 1) throw DomainError("FlankedInterval requires 2*eps*n >= 1");
    if (w > n) throw DomainError("FlankedInterval requires 2*eps*n <= n");
    SplitMix64 rng(seed);
    std::vector<std::int64_t> kept;
    std::vector<std::int64_t> missing;
    auto visit = [&](std::int64_t x) { (rng.coin() ? kept : missing).push_back(x); };
    for (std::int64_t x = -w; x < 0; ++x) visit(x);
    for (std::int64_t x = n - w; x < n; ++x) visit(x);
    const auto target = static_cast<std::size_t>(w);
    if (kept.size() > target) {
        rng.shuffle(kept);
        kept.resize(target);
    } else if (kept.size() < target) {
        rng.shuffle(missing);
        kept.insert(kept.end(), missing.begin(), missing.begin() + static_cast<std::ptrdiff_t>(target - kept.size()));
    }
    std::vector<std::int64_t> a = range_vec(0, n - w);
    a.insert(a.end(), kept.begin(), kept.end());
    return {IntSet::from_unsorted(std::move(a)), IntSet::from_sorted(range_vec(0, n))};
}

Instance doubled_random(std::int64_t n, std::uint64_t seed) {
    if (n < 2) throw DomainError("DoubledRandom requires n >= 2");
    SplitMix64 rng(seed);
    std::vector<std::int64_t> in;
    std::vector<std::int64_t> out;
    for (std::int64_t x = 0; x < n; ++x) (rng.coin() ? in : out).push_back(x);
    const auto target = static_cast<std::size_t>((n + 2) / 2);
    if (in.size() > target) {
        rng.shuffle(in);
        in.resize(target);
    } else if (in.size() < target) {
        rng.shuffle(out);
        in.insert(in.end(), out.begin(), out.begin() + static_cast<std::ptrdiff_t>(target - in.size()));
    }
    std::vector<std::int64_t> a;
    a.reserve(2 * in.size());
    for (auto x : in) {
        a.push_back(x);
        a.push_back(x + n);
    }
    if (static_cast<std::int64_t>(a.size()) == n + 2) {
        std::sort(a.begin(), a.end());
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(rng.below(a.size())));
    }
    return {IntSet::from_unsorted(std::move(a)), IntSet::from_sorted(range_vec(0, n + 1))};
}

} // namespace

Instance generate(const InstanceFamily& f) {
    if (f.n < 1) throw DomainError("n must be >= 1");
    switch (f.kind) {
    case FamilyKind::Interval: {
        IntSet s = IntSet::from_sorted(range_vec(0, f.n));
        return {s, s};
    }
    case FamilyKind::AP: {
        IntSet s = ap_elements(ArithProgression(0, f.difference, f.n));
        return {s, s};
    }
    case FamilyKind::FlankedInterval: return flanked_interval(f.n, f.epsilon, f.seed);
    case FamilyKind::DoubledRandom: return doubled_random(f.n, f.seed);
    case FamilyKind::UniformRandom: {
        if (f.universe_bound < f.n) throw DomainError("UniformRandom requires universe_bound >= n");
        SplitMix64 rng(f.seed);
        IntSet a = IntSet::from_sorted(sample_distinct(rng, f.universe_bound, f.n));
        IntSet b = IntSet::from_sorted(sample_distinct(rng, f.universe_bound, f.n));
        return {std::move(a), std::move(b)};
    }
    case FamilyKind::ExhaustiveUniverse:
        throw DomainError("ExhaustiveUniverse enumerates pairs; use for_each_exhaustive_pair");
    }
    throw DomainError("unknown family");
}

// ---------------------------------------------------------------- sweeps

double sweep_budget_from_env(double fallback) {
    const char* env = std::getenv("SUMSETLAB_BUDGET");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || v <= 0) throw ParseError(std::string("bad SUMSETLAB_BUDGET: ") + env);
    return v;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(workers, count); ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

bool theorem_requires_equal_sizes(TheoremId id) { return id == TheoremId::Thm3 || id == TheoremId::Thm7; }

namespace {

IntSet multi_fibre_part(const IntSet& a, std::int64_t m) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(m));
    for (auto x : a) ++counts[static_cast<std::size_t>(mod_floor(x, m))];
    std::vector<std::int64_t> out;
    for (auto x : a)
        if (counts[static_cast<std::size_t>(mod_floor(x, m))] >= 2) out.push_back(x);
    return IntSet::from_sorted(std::move(out));
}

} // namespace

std::vector<BoundReport> check_instance(TheoremId id, const IntSet& a, const IntSet& b) {
    if (a.empty() || b.size() < 2) return {};
    const bool equal = a.size() == b.size();
    switch (id) {
    case TheoremId::Eq1: return {shift_union_bound(a, b.max() - b.min())};
    case TheoremId::Eq2:
        if (a.size() < b.size()) return {};
        return {triple_expectation_chain(a, b)};
    case TheoremId::Thm1:
        if (a.size() < b.size()) return {};
        return {max_k_translate(a, b, std::min<std::int64_t>(3, static_cast<std::int64_t>(b.size())))};
    case TheoremId::Thm3:
        if (!equal || b.size() < 3) return {};
        return {equality_case_check(a, b)};
    case TheoremId::Thm4:
        if (a.size() < b.size()) return {};
        return {technical_bound(a, b)};
    case TheoremId::Lem5: {
        if (a.size() < b.size()) return {};
        std::vector<BoundReport> out{fibre_escape_expectation(a, a, b)};
        const IntSet part = multi_fibre_part(a, b.max() - b.min());
        if (!part.empty() && part.size() != a.size()) out.push_back(fibre_escape_expectation(a, part, b));
        return out;
    }
    case TheoremId::Lem6:
        return {pair_expected_triple_size(a, b)};
    case TheoremId::Thm7:
        if (!equal) return {};
        return {strengthened_bound(a, b)};
    }
    return {};
}

namespace {

double choose(std::int64_t n, std::int64_t k) { return binomial_estimate(n, k); }

std::int64_t effective_k_min(const ExhaustiveDomain& d, bool equal_sizes) {
    return std::max<std::int64_t>(d.k_min, equal_sizes ? 3 : 2);
}

struct Partial {
    std::int64_t checked = 0;
    std::int64_t met = 0;
    std::int64_t violations = 0;
    std::vector<Violation> kept;
    std::optional<Rational> min_slack;

    void absorb(TheoremId id, const IntSet& a, const IntSet& b, std::size_t cap) {
        const auto reports = check_instance(id, a, b);
        if (reports.empty()) return;
        ++checked;
        bool any_met = false;
        for (const auto& r : reports) {
            if (!r.hypothesis_met) continue;
            any_met = true;
            if (r.kind != BoundKind::Implication) {
                const Rational s = r.slack();
                if (!min_slack || s < *min_slack) min_slack = s;
            }
            if (!r.holds) {
                ++violations;
                if (kept.size() < cap) kept.push_back({a, b, r});
            }
        }
        if (any_met) ++met;
    }
};

void merge(SweepReport& out, std::vector<Partial>& parts, std::size_t cap) {
    for (auto& p : parts) {
        out.instances_checked += p.checked;
        out.hypothesis_met += p.met;
        out.violation_count += p.violations;
        for (auto& v : p.kept)
            if (out.violations.size() < cap) out.violations.push_back(std::move(v));
        if (p.min_slack && (!out.min_slack || *p.min_slack < *out.min_slack)) out.min_slack = p.min_slack;
    }
    out.violations_truncated = static_cast<std::int64_t>(out.violations.size()) < out.violation_count;
}

std::vector<std::vector<IntSet>> subsets_by_size(std::int64_t universe, std::int64_t k_min, std::int64_t k_max) {
    std::vector<std::vector<IntSet>> by_size(static_cast<std::size_t>(k_max + 1));
    const std::int64_t bits = universe + 1;
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        if (k > bits) break;
        std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            by_size[static_cast<std::size_t>(k)].push_back(IntSet::from_sorted(idx));
            std::int64_t i = k - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == bits - k + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (auto j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return by_size;
}

} // namespace

double exhaustive_instance_count(const ExhaustiveDomain& d, bool equal_sizes) {
    const std::int64_t bits = d.universe + 1;
    double total = 0;
    for (std::int64_t ka = effective_k_min(d, equal_sizes); ka <= d.k_max; ++ka)
        for (std::int64_t kb = equal_sizes ? ka : effective_k_min(d, equal_sizes); kb <= ka; ++kb)
            total += choose(bits, ka) * choose(bits, kb);
    return total;
}

void for_each_exhaustive_pair(const ExhaustiveDomain& d, bool equal_sizes,
                              const std::function<void(const IntSet&, const IntSet&)>& f) {
    const std::int64_t lo = effective_k_min(d, equal_sizes);
    const auto sets = subsets_by_size(d.universe, lo, d.k_max);
    for (std::int64_t ka = lo; ka <= d.k_max; ++ka)
        for (const auto& a : sets[static_cast<std::size_t>(ka)])
            for (std::int64_t kb = equal_sizes ? ka : lo; kb <= ka; ++kb)
                for (const auto& b : sets[static_cast<std::size_t>(kb)]) f(a, b);
}

SweepReport verify_sweep(TheoremId id, const SweepDomain& domain, const SweepOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepReport out;
    out.theorem_id = id;
    const bool equal = theorem_requires_equal_sizes(id);
    if (const auto* ex = std::get_if<ExhaustiveDomain>(&domain)) {
        out.mode = "exhaustive";
        if (ex->universe < 0 || ex->universe > 40) throw DomainError("exhaustive universe bound must be in [0, 40]");
        if (ex->k_min < 1 || ex->k_max < ex->k_min) throw DomainError("bad size range");
        const double estimate = exhaustive_instance_count(*ex, equal);
        if (estimate > opts.budget)
            throw BudgetExceeded("exhaustive sweep of " + std::to_string(static_cast<long long>(estimate)) +
                                     " instances exceeds budget",
                                 estimate);
        const std::int64_t lo = effective_k_min(*ex, equal);
        const auto sets = subsets_by_size(ex->universe, lo, ex->k_max);
        std::vector<const IntSet*> as;
        for (std::int64_t ka = lo; ka <= ex->k_max; ++ka)
            for (const auto& a : sets[static_cast<std::size_t>(ka)]) as.push_back(&a);
        std::vector<Partial> parts(as.size());
        parallel_for(as.size(), opts.threads, [&](std::size_t i) {
            const IntSet& a = *as[i];
            const auto ka = static_cast<std::int64_t>(a.size());
            for (std::int64_t kb = equal ? ka : lo; kb <= ka; ++kb)
                for (const auto& b : sets[static_cast<std::size_t>(kb)]) parts[i].absorb(id, a, b, opts.max_violations);
        });
        merge(out, parts, opts.max_violations);
    } else {
        const auto& rd = std::get<RandomDomain>(domain);
        out.mode = "random";
        if (rd.count < 1 || rd.size < 1 || rd.range < rd.size) throw DomainError("bad random sweep domain");
        if (static_cast<double>(rd.count) > opts.budget)
            throw BudgetExceeded("random sweep exceeds budget", static_cast<double>(rd.count));
        std::vector<Partial> parts(static_cast<std::size_t>(rd.count));
        parallel_for(parts.size(), opts.threads, [&](std::size_t i) {
            SplitMix64 rng(derive_seed(rd.seed, i));
            const IntSet a = IntSet::from_sorted(sample_distinct(rng, rd.range, rd.size));
            const IntSet b = IntSet::from_sorted(sample_distinct(rng, rd.range, rd.size));
            parts[i].absorb(id, a, b, opts.max_violations);
        });
        merge(out, parts, opts.max_violations);
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// ------------------------------------------------------------- structure

std::vector<std::int64_t> candidate_differences(const IntSet& a, const IntSet& b) {
    std::vector<std::int64_t> out{1};
    for (const IntSet* s : {&b, &a}) {
        std::int64_t g = 0;
        for (auto x : *s) g = std::gcd(g, x - s->min());
        if (g > 0)
            for (auto d : divisors(g)) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StructuralDistance structural_distance(const IntSet& a, const IntSet& b) {
    if (a.empty() || b.empty()) throw DomainError("structural distance of empty set");
    StructuralDistance best;
    std::int64_t best_value = -1;
    for (auto d : candidate_differences(a, b)) {
        const ApFit fa = best_ap_any_length(a, d);
        const ApFit fb = best_ap_any_length(b, d);
        const std::int64_t value = std::max(fa.cost, fb.cost);
        if (best_value < 0 || value < best_value) {
            best_value = value;
            best.difference = d;
            best.P = fa.progression;
            best.Q = fb.progression;
            best.a_delta_p = fa.cost;
            best.b_delta_q = fb.cost;
        }
    }
    best.distance = Rational(best_value, static_cast<std::int64_t>(a.size()));
    return best;
}

namespace {

/// Deterministic candidate subsets: extremes, blocks at each end, spread.
std::vector<std::vector<std::size_t>> extreme_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    auto push = [&](std::vector<std::size_t> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        if (v.size() == k && v.back() < n) out.push_back(std::move(v));
    };
    std::vector<std::size_t> spread(k);
    std::vector<std::size_t> low{n - 1};
    std::vector<std::size_t> high{0};
    std::vector<std::size_t> edges{0, n - 1};
    for (std::size_t j = 0; j < k; ++j) spread[j] = k == 1 ? 0 : j * (n - 1) / (k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) {
        low.push_back(j);
        high.push_back(n - 1 - j);
    }
    for (std::size_t j = 1; edges.size() < k; ++j) edges.push_back(j);
    push(spread);
    push(low);
    push(high);
    push(edges);
    return out;
}

std::vector<std::size_t> random_subset(SplitMix64& rng, std::size_t n, std::size_t k) {
    const auto picks = sample_distinct(rng, static_cast<std::int64_t>(n), static_cast<std::int64_t>(k));
    return {picks.begin(), picks.end()};
}

std::vector<std::int64_t> pick(const IntSet& b, const std::vector<std::size_t>& idx) {
    std::vector<std::int64_t> out;
    for (auto i : idx) out.push_back(b[i]);
    return out;
}

} // namespace

SampledMax sampled_max_translate(const IntSet& a, const IntSet& b, std::int64_t k, std::int64_t samples,
                                 std::uint64_t seed) {
    if (k < 1 || k > static_cast<std::int64_t>(b.size())) throw DomainError("bad k for sampled max");
    SampledMax out;
    if (binomial_estimate(static_cast<std::int64_t>(b.size()), k) <= static_cast<double>(samples)) {
        const BoundReport r = max_k_translate(a, b, k);
        out.value = static_cast<std::int64_t>(r.lhs.num());
        out.witness = r.witness;
        out.exhaustive = true;
        return out;
    }
    const std::size_t n = b.size();
    const auto kk = static_cast<std::size_t>(k);
    TranslateCounter counter(a);
    SplitMix64 rng(seed);
    std::vector<std::size_t> best_idx;
    std::int64_t best = -1;
    auto consider = [&](const std::vector<std::size_t>& idx) {
        const std::int64_t v = counter.count(pick(b, idx));
        if (v > best) {
            best = v;
            best_idx = idx;
        }
        return v;
    };
    for (const auto& idx : extreme_subsets(n, kk)) consider(idx);
    for (std::int64_t s = 0; s < samples; ++s) consider(random_subset(rng, n, kk));
    // Hill climb: replace one translate at a time while it helps.
    for (std::int64_t step = 0; step < samples / 4; ++step) {
        std::vector<std::size_t> idx = best_idx;
        idx[rng.below(kk)] = rng.below(n);
        std::sort(idx.begin(), idx.end());
        if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
        consider(idx);
    }
    out.value = best;
    out.witness = pick(b, best_idx);
    return out;
}

BoundReport sampled_translate_check(const IntSet& a, const IntSet& b, std::int64_t k, std::int64_t bound,
                                    std::int64_t samples, std::uint64_t seed) {
    if (binomial_estimate(static_cast<std::int64_t>(b.size()), k) <= static_cast<double>(samples))
        return min_k_translate_check(a, b, k, bound);
    const std::size_t n = b.size();
    const auto kk = static_cast<std::size_t>(k);
    TranslateCounter counter(a);
    SplitMix64 rng(seed);
    BoundReport r;
    r.theorem_id = TheoremId::Thm3;
    r.kind = BoundKind::Upper;
    r.rhs = bound;
    r.exact = false;
    std::int64_t best = -1;
    auto consider = [&](const std::vector<std::size_t>& idx) {
        const auto xs = pick(b, idx);
        const std::int64_t v = counter.count(xs);
        if (v > best) {
            best = v;
            r.witness = xs;
        }
        return v > bound;
    };
    bool violated = false;
    for (const auto& idx : extreme_subsets(n, kk))
        if ((violated = consider(idx))) break;
    for (std::int64_t s = 0; !violated && s < samples; ++s) violated = consider(random_subset(rng, n, kk));
    r.lhs = best;
    r.holds = !violated;
    return r;
}

// ----------------------------------------------------------- experiments

namespace {

Rational hypothesis_bound(const Rational& eps, std::int64_t n) {
    return (Rational(2) + eps) * Rational(n) - Rational(1);
}

} // namespace

ConjectureReport conjecture_search(const ConjectureSearchParams& p) {
    if (p.trials < 1) throw DomainError("trials must be >= 1");
    if (p.n_min < 3 || p.n_max < p.n_min) throw DomainError("bad n range (need 3 <= n_min <= n_max)");
    ConjectureReport out;
    out.params = p;
    out.trials.resize(static_cast<std::size_t>(p.trials));
    parallel_for(out.trials.size(), p.threads, [&](std::size_t i) {
        ConjectureTrial& t = out.trials[i];
        t.index = static_cast<std::int64_t>(i);
        t.seed = derive_seed(p.seed, i);
        SplitMix64 rng(t.seed);
        const std::int64_t n = rng.between(p.n_min, p.n_max);
        InstanceFamily fam;
        fam.seed = rng.next();
        switch (i % 4) {
        case 0:
            fam.kind = FamilyKind::DoubledRandom;
            fam.n = n - 1;
            break;
        case 1:
            fam.kind = FamilyKind::UniformRandom;
            fam.n = n;
            fam.universe_bound = 2 * n;
            break;
        case 2:
            fam.kind = flank_width(n, p.epsilon) >= 1 && flank_width(n, p.epsilon) <= n ? FamilyKind::FlankedInterval
                                                                                       : FamilyKind::Interval;
            fam.n = n;
            fam.epsilon = p.epsilon;
            break;
        default:
            fam.kind = FamilyKind::UniformRandom;
            fam.n = n;
            fam.universe_bound = n + std::max<std::int64_t>(1, n / 5);
            break;
        }
        t.family = fam.kind;
        const Instance inst = generate(fam);
        t.n = static_cast<std::int64_t>(inst.a.size());
        const std::int64_t bound = hypothesis_bound(p.epsilon, t.n).floor();
        const BoundReport check = p.exhaustive ? min_k_translate_check(inst.a, inst.b, 3, bound)
                                               : sampled_translate_check(inst.a, inst.b, 3, bound, p.samples,
                                                                         rng.next());
        t.max_triple = static_cast<std::int64_t>(check.lhs.num());
        t.hypothesis_holds = check.holds;
        if (!t.hypothesis_holds) return;
        t.distance = structural_distance(inst.a, inst.b).distance;
        if (t.distance <= p.delta_star) return;
        if (check.exact) {
            t.flagged = true;
            return;
        }
        const BoundReport full = min_k_translate_check(inst.a, inst.b, 3, bound);
        t.flagged = full.holds;
        t.discarded = !full.holds;
    });
    for (const auto& t : out.trials) {
        if (t.hypothesis_holds && !t.discarded) {
            ++out.hypothesis_count;
            if (!out.max_distance_under_hypothesis || t.distance > *out.max_distance_under_hypothesis)
                out.max_distance_under_hypothesis = t.distance;
        }
        out.flagged += t.flagged ? 1 : 0;
        out.discarded += t.discarded ? 1 : 0;
    }
    return out;
}

StrategyGapRow strategy_gap_row(const IntSet& a, const IntSet& b, std::int64_t pair_samples, std::uint64_t seed) {
    const std::int64_t n = b.max() - b.min();
    if (n < 2) throw DomainError("strategy gap needs max B - min B >= 2");
    StrategyGapRow row;
    row.seed = seed;
    row.three_mean = expected_triple_size(a, b) / Rational(n);
    TranslateCounter counter(a);
    SplitMix64 rng(seed);
    std::int64_t best = 0;
    for (std::int64_t s = 0; s < pair_samples; ++s) {
        const std::int64_t x = b[1 + rng.below(b.size() - 2)];
        std::int64_t y = x;
        while (y == x) y = b[1 + rng.below(b.size() - 2)];
        const std::int64_t xs[4] = {b.min(), std::min(x, y), std::max(x, y), b.max()};
        best = std::max(best, counter.count(xs));
    }
    row.four_max = Rational(best, n);
    row.ap_distance = structural_distance(a, b).distance;
    return row;
}

StrategyGapReport strategy_gap_experiment(const StrategyGapParams& p) {
    if (p.n < 100) throw DomainError("strategy gap requires n >= 100");
    StrategyGapReport out;
    out.params = p;
    out.rows.resize(p.seeds.size());
    parallel_for(p.seeds.size(), p.threads, [&](std::size_t i) {
        const Instance inst = generate({FamilyKind::DoubledRandom, p.n, {}, 0, p.seeds[i], 1});
        out.rows[i] = strategy_gap_row(inst.a, inst.b, p.pair_samples, p.seeds[i]);
        out.rows[i].seed = p.seeds[i];
    });
    if (!out.rows.empty()) {
        out.min_ap_distance = out.rows.front().ap_distance.to_double();
        for (const auto& r : out.rows) {
            out.three_mean += r.three_mean.to_double();
            out.four_mean += r.four_max.to_double();
            out.min_ap_distance = std::min(out.min_ap_distance, r.ap_distance.to_double());
        }
        out.three_mean /= static_cast<double>(out.rows.size());
        out.four_mean /= static_cast<double>(out.rows.size());
    }
    return out;
}

TightnessReport tightness_experiment(const TightnessParams& p) {
    for (const auto& eps : p.epsilons)
        if (eps * Rational(p.n) < Rational(4)) throw DomainError("tightness requires eps*n >= 4");
    TightnessReport out;
    out.params = p;
    const std::size_t per = p.seeds.size();
    out.rows.resize(p.epsilons.size() * per);
    parallel_for(out.rows.size(), p.threads, [&](std::size_t i) {
        const Rational& eps = p.epsilons[i / per];
        const std::uint64_t seed = p.seeds[i % per];
        const Instance inst = generate({FamilyKind::FlankedInterval, p.n, eps, 0, seed, 1});
        TightnessRow& row = out.rows[i];
        row.epsilon = eps;
        row.seed = seed;
        const SampledMax m = sampled_max_translate(inst.a, inst.b, 4, p.samples, derive_seed(seed, 4));
        row.max_four = m.value;
        row.exhaustive = m.exhaustive;
        std::int64_t best = -1;
        for (auto d : candidate_differences(inst.a, inst.b)) {
            const std::int64_t c = best_ap_any_length(inst.a, d).cost;
            if (best < 0 || c < best) best = c;
        }
        row.min_delta = best;
        row.ratio = Rational(best, p.n) / eps;
    });
    for (std::size_t e = 0; e < p.epsilons.size(); ++e) {
        double sum = 0;
        for (std::size_t s = 0; s < per; ++s) sum += out.rows[e * per + s].ratio.to_double();
        out.mean_ratio.push_back(per == 0 ? 0.0 : sum / static_cast<double>(per));
    }
    return out;
}

} // namespace sumsetlab
