#include "sumsetlab/io.hpp"

#include <fstream>
#include <sstream>

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(token, &used);
        } catch (const std::exception&) {
            throw ParseError("not an integer: " + token);
        }
        if (used != token.size()) throw ParseError("not an integer: " + token);
        out.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token.push_back(c);
        }
    }
    flush();
    return out;
}

namespace {

IntSet json_set(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
    const auto& arr = j.at(key);
    if (!arr.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
    std::vector<std::int64_t> v;
    for (const auto& x : arr) {
        if (!x.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must hold integers");
        v.push_back(x.get<std::int64_t>());
    }
    if (v.empty()) throw ParseError(std::string("\"") + key + "\" is empty");
    return IntSet::from_unsorted(std::move(v));
}

} // namespace

SetPair parse_set_pair(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty input");
    if (text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object()) throw ParseError("expected a JSON object");
        return {json_set(j, "A"), json_set(j, "B")};
    }
    std::istringstream in(text);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    if (lines.size() != 2) throw ParseError("plain-text input needs exactly two non-empty lines");
    auto a = parse_int_list(lines[0]);
    auto b = parse_int_list(lines[1]);
    return {IntSet::from_unsorted(std::move(a)), IntSet::from_unsorted(std::move(b))};
}

SetPair read_set_pair(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_set_pair(ss.str());
}

std::string join(const IntSet& s, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(s[i]);
    }
    return out;
}

Json to_json(const IntSet& s) { return Json(s.vec()); }

Json to_json(const ArithProgression& p) {
    return {{"start", p.start()}, {"difference", p.difference()}, {"length", p.length()}};
}

namespace {

const char* kind_name(BoundKind k) {
    switch (k) {
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
    case BoundKind::Implication: return "implication";
    }
    return "?";
}

Json opt_big(const std::optional<BigRational>& v) { return v ? big_json(*v) : Json(nullptr); }

template <class T> Json opt(const std::optional<T>& v) { return v ? Json(*v) : Json(nullptr); }

} // namespace

Json big_json(const BigRational& r) { return {{"exact", big_str(r)}, {"approx", big_sci(r, 6)}}; }

Json to_json(const BoundReport& r) {
    Json j{{"theorem_id", to_string(r.theorem_id)},
           {"kind", kind_name(r.kind)},
           {"lhs", r.lhs.str()},
           {"rhs", r.rhs.str()},
           {"holds", r.holds},
           {"hypothesis_met", r.hypothesis_met},
           {"witness", r.witness},
           {"exact", r.exact}};
    if (r.structure_ok) j["structure_ok"] = *r.structure_ok;
    return j;
}

Json to_json(const RecoveryCertificate& c) {
    Json params{{"epsilon", big_json(c.params.epsilon)}, {"delta", opt_big(c.params.delta)},
                {"alpha", opt_big(c.params.alpha)},     {"beta", opt_big(c.params.beta)},
                {"mu", opt_big(c.params.mu)},           {"nu", opt_big(c.params.nu)},
                {"c", opt_big(c.params.c)}};
    return {{"stage", to_string(c.stage)},
            {"P", to_json(c.P)},
            {"Q", to_json(c.Q)},
            {"common_difference_equal", c.common_difference_equal},
            {"covers_B", c.covers_B},
            {"a_minus_p", c.a_minus_p},
            {"a_delta_p", c.a_delta_p},
            {"params", params},
            {"q_size_bound", opt(c.q_size_bound)},
            {"p_size_bound", opt(c.p_size_bound)},
            {"q_bound_approx", opt(c.q_bound_approx)},
            {"a_bound_approx", opt(c.a_bound_approx)},
            {"q_bound_met", c.q_bound_met},
            {"p_bound_met", c.p_bound_met},
            {"a_bound_met", c.a_bound_met},
            {"vacuous", c.vacuous},
            {"note", c.note}};
}

Json to_json(const StabilityChain& ch) {
    Json j{{"epsilon", big_json(ch.epsilon)},
           {"delta", big_json(ch.delta)},
           {"delta_in_proof_regime", ch.delta_in_proof_regime},
           {"mu1", big_json(ch.mu1)},
           {"nu1", big_json(ch.nu1)},
           {"mu2", big_json(ch.mu2)},
           {"nu2", big_json(ch.nu2)},
           {"feasible", ch.feasible},
           {"failed_stage", ch.failed_stage ? Json(to_string(*ch.failed_stage)) : Json(nullptr)},
           {"c", ch.c ? Json(big_sci(*ch.c, 4)) : Json(nullptr)},
           {"c_exact", opt_big(ch.c)}};
    if (ch.eps0_bracket)
        j["eps0_bracket"] = {big_json(ch.eps0_bracket->first), big_json(ch.eps0_bracket->second)};
    return j;
}

Json to_json(const FullRecovery& f) {
    Json j{{"weak", to_json(f.weak)},
           {"boost1", f.boost1 ? to_json(*f.boost1) : Json(nullptr)},
           {"boost2", f.boost2 ? to_json(*f.boost2) : Json(nullptr)},
           {"chain", to_json(f.chain)},
           {"final_delta_within_c", opt(f.final_delta_within_c)},
           {"final_q_within_c", opt(f.final_q_within_c)}};
    return j;
}

Json to_json(const SweepReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"A", to_json(v.a)}, {"B", to_json(v.b)}, {"report", to_json(v.report)}});
    return {{"theorem_id", to_string(r.theorem_id)},
            {"mode", r.mode},
            {"instances_checked", r.instances_checked},
            {"hypothesis_met", r.hypothesis_met},
            {"violation_count", r.violation_count},
            {"violations", violations},
            {"violations_truncated", r.violations_truncated},
            {"min_slack", r.min_slack ? Json(r.min_slack->str()) : Json(nullptr)}};
}

Json to_json(const ConjectureReport& r) {
    Json trials = Json::array();
    for (const auto& t : r.trials)
        trials.push_back({{"index", t.index},
                          {"family", to_string(t.family)},
                          {"n", t.n},
                          {"seed", t.seed},
                          {"hypothesis_holds", t.hypothesis_holds},
                          {"max_triple", t.max_triple},
                          {"distance", t.hypothesis_holds ? Json(t.distance.str()) : Json(nullptr)},
                          {"flagged", t.flagged},
                          {"discarded", t.discarded}});
    return {{"epsilon", r.params.epsilon.str()},
            {"delta_star", r.params.delta_star.str()},
            {"n_range", {r.params.n_min, r.params.n_max}},
            {"trials_requested", r.params.trials},
            {"seed", r.params.seed},
            {"exhaustive", r.params.exhaustive},
            {"hypothesis_count", r.hypothesis_count},
            {"flagged", r.flagged},
            {"discarded", r.discarded},
            {"max_distance_under_hypothesis",
             r.max_distance_under_hypothesis ? Json(r.max_distance_under_hypothesis->str()) : Json(nullptr)},
            {"trials", trials}};
}

Json to_json(const StrategyGapReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"seed", row.seed},
                        {"three_mean", row.three_mean.str()},
                        {"four_max", row.four_max.str()},
                        {"ap_distance", row.ap_distance.str()}});
    return {{"n", r.params.n},
            {"pair_samples", r.params.pair_samples},
            {"three_mean", r.three_mean},
            {"four_mean", r.four_mean},
            {"min_ap_distance", r.min_ap_distance},
            {"rows", rows}};
}

Json to_json(const TightnessReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"epsilon", row.epsilon.str()},
                        {"seed", row.seed},
                        {"max_four", row.max_four},
                        {"max_four_exhaustive", row.exhaustive},
                        {"min_delta", row.min_delta},
                        {"ratio", row.ratio.str()}});
    Json means = Json::array();
    for (std::size_t i = 0; i < r.mean_ratio.size(); ++i)
        means.push_back({{"epsilon", r.params.epsilons[i].str()}, {"mean_ratio", r.mean_ratio[i]}});
    return {{"n", r.params.n}, {"samples", r.params.samples}, {"mean_ratio", means}, {"rows", rows}};
}

namespace {

constexpr const char* kCsvHeader = "family,n,eps,seed,metric,value\n";

void row(std::ostringstream& os, const std::string& family, std::int64_t n, const std::string& eps,
         std::uint64_t seed, const std::string& metric, const std::string& value) {
    os << family << ',' << n << ',' << eps << ',' << seed << ',' << metric << ',' << value << '\n';
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

std::string to_csv(const ConjectureReport& r) {
    std::ostringstream os;
    os << kCsvHeader;
    const std::string eps = r.params.epsilon.str();
    for (const auto& t : r.trials) {
        const std::string fam = to_string(t.family);
        row(os, fam, t.n, eps, t.seed, "max_triple", std::to_string(t.max_triple));
        row(os, fam, t.n, eps, t.seed, "hypothesis_holds", t.hypothesis_holds ? "1" : "0");
        if (t.hypothesis_holds) row(os, fam, t.n, eps, t.seed, "distance", num(t.distance.to_double()));
        row(os, fam, t.n, eps, t.seed, "flagged", t.flagged ? "1" : "0");
    }
    return os.str();
}

std::string to_csv(const StrategyGapReport& r) {
    std::ostringstream os;
    os << kCsvHeader;
    for (const auto& rw : r.rows) {
        row(os, "DoubledRandom", r.params.n, "", rw.seed, "three_mean", num(rw.three_mean.to_double()));
        row(os, "DoubledRandom", r.params.n, "", rw.seed, "four_max", num(rw.four_max.to_double()));
        row(os, "DoubledRandom", r.params.n, "", rw.seed, "ap_distance", num(rw.ap_distance.to_double()));
    }
    row(os, "DoubledRandom", r.params.n, "", 0, "summary_three_mean", num(r.three_mean));
    row(os, "DoubledRandom", r.params.n, "", 0, "summary_four_mean", num(r.four_mean));
    row(os, "DoubledRandom", r.params.n, "", 0, "summary_min_ap_distance", num(r.min_ap_distance));
    return os.str();
}

std::string to_csv(const TightnessReport& r) {
    std::ostringstream os;
    os << kCsvHeader;
    for (const auto& rw : r.rows) {
        const std::string eps = rw.epsilon.str();
        row(os, "FlankedInterval", r.params.n, eps, rw.seed, "max_four", std::to_string(rw.max_four));
        row(os, "FlankedInterval", r.params.n, eps, rw.seed, "min_delta", std::to_string(rw.min_delta));
        row(os, "FlankedInterval", r.params.n, eps, rw.seed, "ratio", num(rw.ratio.to_double()));
    }
    for (std::size_t i = 0; i < r.mean_ratio.size(); ++i)
        row(os, "FlankedInterval", r.params.n, r.params.epsilons[i].str(), 0, "summary_mean_ratio",
            num(r.mean_ratio[i]));
    return os.str();
}

} // namespace sumsetlab
