#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/experiments.hpp"
#include "sumsetlab/recovery.hpp"

namespace sumsetlab {

inline constexpr int kSchemaVersion = 1;

struct SetPair {
    IntSet a;
    IntSet b;
};

/// {"A": [...], "B": [...]} or two lines of whitespace-separated integers.
SetPair parse_set_pair(const std::string& text);
SetPair read_set_pair(const std::string& path);

/// Integers separated by commas and/or whitespace.
std::vector<std::int64_t> parse_int_list(const std::string& text);

/// "0,1,2".
std::string join(const IntSet& s, const char* sep = ",");

using Json = nlohmann::ordered_json;

Json to_json(const IntSet& s);
Json to_json(const ArithProgression& p);
Json to_json(const BoundReport& r);
Json to_json(const RecoveryCertificate& c);
Json to_json(const StabilityChain& ch);
Json to_json(const FullRecovery& f);
Json to_json(const SweepReport& r);
Json to_json(const ConjectureReport& r);
Json to_json(const StrategyGapReport& r);
Json to_json(const TightnessReport& r);

/// Exact value plus a display approximation.
Json big_json(const BigRational& r);

/// Flat rows: family,n,eps,seed,metric,value.
std::string to_csv(const ConjectureReport& r);
std::string to_csv(const StrategyGapReport& r);
std::string to_csv(const TightnessReport& r);

} // namespace sumsetlab
