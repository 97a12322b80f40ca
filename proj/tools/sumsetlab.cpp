#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sumsetlab/errors.hpp"
#include "sumsetlab/io.hpp"
#include "sumsetlab/rng.hpp"

using namespace sumsetlab;

namespace {

enum Exit { kOk = 0, kBoundNotMet = 1, kUsage = 2, kBudget = 3, kHypothesis = 4 };

struct Common {
    std::string format = "json";
    std::string output;
    std::string csv;
    int threads = 1;
    std::uint64_t seed = 0;
    std::optional<double> budget;
    bool compare = false;
};

struct Inputs {
    std::string input;
    std::string a;
    std::string b;
};

void add_common(CLI::App* cmd, Common& c, bool with_csv) {
    cmd->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--output,-o", c.output, "write the report here instead of stdout");
    if (with_csv) cmd->add_option("--csv", c.csv, "also write the CSV summary here");
    cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "base seed");
    cmd->add_option("--budget", c.budget, "enumeration budget (overrides SUMSETLAB_BUDGET)");
    cmd->add_flag("--compare", c.compare, "omit the metadata block so reruns are byte-identical");
}

void add_inputs(CLI::App* cmd, Inputs& in) {
    cmd->add_option("--input,-i", in.input, "file with {\"A\":[..],\"B\":[..]} or two lines of integers");
    cmd->add_option("--a", in.a, "A as a comma-separated list");
    cmd->add_option("--b", in.b, "B as a comma-separated list");
}

SetPair load(const Inputs& in) {
    if (!in.input.empty()) {
        if (!in.a.empty() || !in.b.empty()) throw ParseError("use either --input or --a/--b");
        return read_set_pair(in.input);
    }
    if (in.a.empty() || in.b.empty()) throw ParseError("need --input or both --a and --b");
    auto a = parse_int_list(in.a);
    auto b = parse_int_list(in.b);
    if (a.empty() || b.empty()) throw ParseError("empty set literal");
    return {IntSet::from_unsorted(std::move(a)), IntSet::from_unsorted(std::move(b))};
}

double budget_of(const Common& c, double fallback) { return c.budget ? *c.budget : sweep_budget_from_env(fallback); }

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const auto v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw ParseError("bad range: " + text + " (expected lo..hi)");
    }
}

std::string timestamp() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

class Emitter {
  public:
    explicit Emitter(const Common& c) : common_(c), start_(std::chrono::steady_clock::now()) {}

    void json(const std::string& command, Json report, const std::string& text_form = "") {
        std::string body;
        if (common_.format == "text" && !text_form.empty()) {
            body = text_form;
        } else {
            Json doc{{"schema_version", kSchemaVersion}, {"command", command}, {"seed", common_.seed}};
            doc["report"] = std::move(report);
            if (!common_.compare) {
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
                doc["metadata"] = {{"timestamp", timestamp()}, {"wall_seconds", secs}, {"threads", common_.threads}};
            }
            body = doc.dump(2) + "\n";
        }
        write(common_.output, body);
    }

    void csv(const std::string& body) const {
        if (!common_.csv.empty()) write(common_.csv, body);
    }

    static void write(const std::string& path, const std::string& body) {
        if (path.empty() || path == "-") {
            std::cout << body;
            return;
        }
        std::ofstream f(path);
        if (!f) throw ParseError("cannot write " + path);
        f << body;
    }

  private:
    const Common& common_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integer sumset toolkit: translate bounds, structure recovery and experiments."};
    app.require_subcommand(1);

    Common common;
    Inputs inputs;

    auto* sumset_cmd = app.add_subcommand("sumset", "print A+B, or A+X for explicit translates X");
    add_inputs(sumset_cmd, inputs);
    add_common(sumset_cmd, common, false);
    std::string x_list;
    sumset_cmd->add_option("--x", x_list, "translates X (members of B) to use instead of all of B");
    std::string kernel = "auto";
    sumset_cmd->add_option("--kernel", kernel, "auto, list or bitset")->check(CLI::IsMember({"auto", "list", "bitset"}));

    auto* verify_cmd = app.add_subcommand("verify", "check a theorem over an instance domain");
    add_common(verify_cmd, common, false);
    std::string theorem;
    bool exhaustive = false;
    std::int64_t universe = 10;
    std::string sizes = "2..4";
    std::int64_t random_count = 0;
    std::int64_t random_size = 10;
    std::int64_t random_range = 40;
    std::size_t max_violations = 20;
    verify_cmd->add_option("--theorem", theorem, "eq1 eq2 thm1 thm3 thm4 lem5 lem6 thm7")->required();
    auto* ex_flag = verify_cmd->add_flag("--exhaustive", exhaustive, "all pairs A, B in [0, U]");
    verify_cmd->add_option("--universe", universe, "U for exhaustive mode");
    verify_cmd->add_option("--sizes", sizes, "k_min..k_max for exhaustive mode");
    auto* rand_opt = verify_cmd->add_option("--random", random_count, "number of random instances");
    verify_cmd->add_option("--size", random_size, "|A| = |B| in random mode");
    verify_cmd->add_option("--range", random_range, "random elements are drawn from [0, range)");
    verify_cmd->add_option("--max-violations", max_violations, "violations kept in the report");
    ex_flag->excludes(rand_opt);

    auto* recover_cmd = app.add_subcommand("recover", "structure recovery certificate");
    add_inputs(recover_cmd, inputs);
    add_common(recover_cmd, common, false);
    std::string mode = "freiman";
    std::string eps_text = "0";
    bool check_hypothesis = false;
    std::int64_t hypothesis_samples = 1000;
    recover_cmd->add_option("--mode", mode, "freiman, weak or full")->check(CLI::IsMember({"freiman", "weak", "full"}));
    recover_cmd->add_option("--eps", eps_text, "epsilon (exact: 1/1000, 0.001, 1e-3)");
    recover_cmd->add_flag("--check-hypothesis", check_hypothesis,
                          "first test |A+X| <= (2+eps)n-1 on sampled and extreme 4-subsets X");
    recover_cmd->add_option("--samples", hypothesis_samples, "4-subsets sampled by --check-hypothesis");

    auto* search_cmd = app.add_subcommand("search", "search for three-translate counterexample candidates");
    add_common(search_cmd, common, true);
    std::string target = "conjecture3";
    std::string n_range = "8..12";
    std::string delta_text = "1/4";
    std::string search_eps = "1/10";
    std::int64_t trials = 100;
    bool search_exhaustive = false;
    std::int64_t search_samples = 1000;
    search_cmd->add_option("target", target, "search target")->check(CLI::IsMember({"conjecture3"}));
    search_cmd->add_option("--n", n_range, "n or lo..hi");
    search_cmd->add_option("--eps", search_eps, "epsilon in the (2+eps)n-1 hypothesis");
    search_cmd->add_option("--delta", delta_text, "flag instances farther than this from progressions");
    search_cmd->add_option("--trials", trials, "instances to draw")->check(CLI::PositiveNumber);
    search_cmd->add_flag("--exhaustive", search_exhaustive, "check the hypothesis on every triple");
    search_cmd->add_option("--samples", search_samples, "triples sampled otherwise");

    auto* exp_cmd = app.add_subcommand("experiment", "strategy-gap or tightness experiment");
    add_common(exp_cmd, common, true);
    std::string experiment;
    std::int64_t exp_n = 10000;
    std::int64_t exp_trials = 20;
    std::vector<std::string> eps_list;
    std::int64_t exp_samples = 0;
    exp_cmd->add_option("name", experiment, "strategy-gap or tightness")
        ->required()
        ->check(CLI::IsMember({"strategy-gap", "tightness"}));
    exp_cmd->add_option("--n", exp_n, "instance size");
    exp_cmd->add_option("--trials", exp_trials, "seeds per configuration")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--eps", eps_list, "epsilon values (tightness)");
    exp_cmd->add_option("--samples", exp_samples, "pair samples (strategy-gap) or 4-subset samples (tightness)");

    auto* const_cmd = app.add_subcommand("constants", "evaluate the stability constants chain");
    add_common(const_cmd, common, false);
    std::string const_eps = "1e-10";
    int octaves = 0;
    const_cmd->add_option("--eps", const_eps, "epsilon");
    const_cmd->add_option("--grid-octaves", octaves, "also report max c over this many octaves below --eps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    Emitter emit(common);
    try {
        if (*sumset_cmd) {
            const SetPair in = load(inputs);
            const SumsetKernel k = kernel == "list" ? SumsetKernel::SortedList
                                   : kernel == "bitset" ? SumsetKernel::Bitset
                                                        : SumsetKernel::Auto;
            IntSet rhs = in.b;
            if (!x_list.empty()) {
                const auto xs = parse_int_list(x_list);
                TranslateSelection::from(in.b, xs);
                rhs = IntSet::from_unsorted(xs);
            }
            const IntSet s = sumset(in.a, rhs, k);
            emit.json("sumset", {{"sumset", to_json(s)}, {"size", s.size()}}, join(s) + "\n");
            return kOk;
        }
        if (*verify_cmd) {
            const TheoremId id = parse_theorem_id(theorem);
            SweepOptions opts;
            opts.threads = common.threads;
            opts.budget = budget_of(common, kDefaultSweepBudget);
            opts.max_violations = max_violations;
            SweepDomain domain;
            if (random_count > 0) {
                domain = RandomDomain{random_count, random_size, random_range, common.seed};
            } else {
                const auto [lo, hi] = parse_range(sizes);
                domain = ExhaustiveDomain{universe, lo, hi};
            }
            const SweepReport r = verify_sweep(id, domain, opts);
            std::ostringstream text;
            text << to_string(r.theorem_id) << " " << r.mode << ": " << r.instances_checked << " instances, "
                 << r.hypothesis_met << " with hypothesis met, " << r.violation_count << " violations\n";
            emit.json("verify", to_json(r), text.str());
            return r.violation_count == 0 ? kOk : kBoundNotMet;
        }
        if (*recover_cmd) {
            const SetPair in = load(inputs);
            const BigRational eps = parse_big_rational(eps_text);
            if (eps < 0) throw DomainError("epsilon must be >= 0");
            Json out;
            if (check_hypothesis && mode != "freiman") {
                if (in.a.size() != in.b.size()) throw HypothesisError("|A| must equal |B|");
                const auto n = static_cast<std::int64_t>(in.a.size());
                const BigInt bound = floor_big((2 + eps) * to_big(n) - 1);
                const BoundReport check =
                    sampled_translate_check(in.a, in.b, std::min<std::int64_t>(4, n),
                                            bound.convert_to<std::int64_t>(), hypothesis_samples, common.seed);
                out["hypothesis_check"] = to_json(check);
                if (!check.holds) {
                    emit.json("recover", out);
                    std::cerr << "hypothesis failed: |A+X| = " << check.lhs.str() << " > " << check.rhs.str() << "\n";
                    return kHypothesis;
                }
            } else if (mode != "freiman") {
                out["hypothesis_check"] = "skipped (pass --check-hypothesis to test sampled 4-subsets)";
            }
            bool ok = true;
            if (mode == "freiman") {
                const RecoveryCertificate c = freiman_recover(in.a, in.b);
                out["certificate"] = to_json(c);
                ok = c.bounds_met();
            } else if (mode == "weak") {
                WeakRecoveryInfo info;
                const RecoveryCertificate c = weak_stability_recover(in.a, in.b, eps, &info);
                out["certificate"] = to_json(c);
                out["stabilizer"] = {{"m", info.m},
                                     {"residues", info.residue_count},
                                     {"doubled_residues", info.doubled_count},
                                     {"generator", info.stabilizer_generator}};
                ok = c.bounds_met() && !c.vacuous;
            } else {
                const FullRecovery f = full_stability_recover(in.a, in.b, eps);
                out["recovery"] = to_json(f);
                for (const RecoveryCertificate* c : {&f.weak, &*f.boost1, &*f.boost2})
                    ok = ok && c->bounds_met() && !c->vacuous;
                ok = ok && f.final_delta_within_c.value_or(true) && f.final_q_within_c.value_or(true);
            }
            emit.json("recover", out);
            return ok ? kOk : kBoundNotMet;
        }
        if (*search_cmd) {
            ConjectureSearchParams p;
            std::tie(p.n_min, p.n_max) = parse_range(n_range);
            p.epsilon = Rational::parse(search_eps);
            p.delta_star = Rational::parse(delta_text);
            p.trials = trials;
            p.seed = common.seed;
            p.exhaustive = search_exhaustive;
            p.samples = search_samples;
            p.threads = common.threads;
            const ConjectureReport r = conjecture_search(p);
            if (common.format == "csv") {
                Emitter::write(common.output, to_csv(r));
            } else {
                std::ostringstream text;
                text << r.trials.size() << " trials, " << r.hypothesis_count << " met the hypothesis, " << r.flagged
                     << " flagged, " << r.discarded << " discarded on re-check\n";
                emit.json("search", to_json(r), text.str());
            }
            emit.csv(to_csv(r));
            return kOk;
        }
        if (*exp_cmd) {
            std::vector<std::uint64_t> seeds;
            for (std::int64_t i = 0; i < exp_trials; ++i)
                seeds.push_back(derive_seed(common.seed, static_cast<std::uint64_t>(i)));
            std::string csv_body;
            Json report;
            std::string text;
            if (experiment == "strategy-gap") {
                StrategyGapParams p;
                p.n = exp_n;
                p.seeds = seeds;
                if (exp_samples > 0) p.pair_samples = exp_samples;
                p.threads = common.threads;
                const StrategyGapReport r = strategy_gap_experiment(p);
                report = to_json(r);
                csv_body = to_csv(r);
                text = "three-translate mean " + std::to_string(r.three_mean) + ", four-translate mean " +
                       std::to_string(r.four_mean) + ", min AP distance " + std::to_string(r.min_ap_distance) + "\n";
            } else {
                TightnessParams p;
                p.n = exp_n;
                p.seeds = seeds;
                p.epsilons.clear();
                for (const auto& e : eps_list.empty() ? std::vector<std::string>{"0.04"} : eps_list)
                    p.epsilons.push_back(Rational::parse(e));
                if (exp_samples > 0) p.samples = exp_samples;
                p.threads = common.threads;
                const TightnessReport r = tightness_experiment(p);
                report = to_json(r);
                csv_body = to_csv(r);
                for (std::size_t i = 0; i < r.mean_ratio.size(); ++i)
                    text += "eps " + p.epsilons[i].str() + ": mean ratio " + std::to_string(r.mean_ratio[i]) + "\n";
            }
            if (common.format == "csv") {
                Emitter::write(common.output, csv_body);
            } else {
                emit.json("experiment", report, text);
            }
            emit.csv(csv_body);
            return kOk;
        }
        if (*const_cmd) {
            const BigRational eps = parse_big_rational(const_eps);
            const StabilityChain ch = stability_constants(eps);
            Json report = to_json(ch);
            if (octaves > 0) report["c_grid_max"] = big_sci(constants_c_over_grid(eps, octaves), 4);
            std::ostringstream text;
            text << "delta " << big_sci(ch.delta, 6) << "  mu1 " << big_sci(ch.mu1, 6) << "  nu1 " << big_sci(ch.nu1, 6)
                 << "  mu2 " << big_sci(ch.mu2, 6) << "  nu2 " << big_sci(ch.nu2, 6) << "\nfeasible "
                 << (ch.feasible ? "yes" : "no") << (ch.c ? "  c " + big_sci(*ch.c, 4) : std::string()) << "\n";
            emit.json("constants", report, text.str());
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (estimate " << e.estimate() << ")\n";
        return kBudget;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis not met: " << e.what() << "\n";
        return kHypothesis;
    } catch (const StructureNotFound& e) {
        std::cerr << "no structure found: " << e.what() << "\n";
        return kHypothesis;
    } catch (const StageError& e) {
        std::cerr << "stage aborted: " << e.what() << "\n";
        return kHypothesis;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
