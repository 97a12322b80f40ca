#include "sumsetlab/big_rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace sumsetlab {

namespace mp = boost::multiprecision;

namespace {

BigInt from_int128(int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt hi = static_cast<std::uint64_t>(u >> 64);
    BigInt out = (hi << 64) + BigInt(static_cast<std::uint64_t>(u));
    return neg ? BigInt(-out) : out;
}

} // namespace

BigRational to_big(const Rational& r) { return BigRational(from_int128(r.num()), from_int128(r.den())); }

BigRational to_big(std::int64_t v) { return BigRational(v); }

BigRational parse_big_rational(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    auto parse_int = [&](const std::string& s) {
        if (s.empty() || s == "-" || s == "+") throw ParseError("bad rational literal: " + raw);
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        for (std::size_t j = i; j < s.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw ParseError("bad rational literal: " + raw);
        const std::size_t first = std::min(s.find_first_not_of('0', i), s.size() - 1);
        BigInt v(s.substr(first));
        return s[0] == '-' ? BigInt(-v) : v;
    };
    if (text.empty()) throw ParseError("empty rational literal");
    if (auto slash = text.find('/'); slash != std::string::npos) {
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator: " + raw);
        return BigRational(parse_int(text.substr(0, slash)), den);
    }
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        const BigInt ex = parse_int(text.substr(e + 1));
        if (ex > 4000 || ex < -4000) throw ParseError("exponent out of range: " + raw);
        exponent = ex.convert_to<long>();
        text = text.substr(0, e);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        const std::string frac = text.substr(dot + 1);
        text = text.substr(0, dot) + frac;
        exponent -= static_cast<long>(frac.size());
    }
    BigRational v(parse_int(text));
    const BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? v / BigRational(scale) : v * BigRational(scale);
}

std::string big_str(const BigRational& r) {
    return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

double big_to_double(const BigRational& r) { return r.convert_to<double>(); }

std::string big_sci(const BigRational& r, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, big_to_double(r));
    return buf;
}

BigRational pow_big(const BigRational& x, unsigned e) {
    BigRational out(1);
    BigRational base = x;
    while (e != 0) {
        if (e & 1U) out *= base;
        base *= base;
        e >>= 1U;
    }
    return out;
}

BigInt floor_big(const BigRational& x) {
    const BigInt& num = mp::numerator(x);
    const BigInt& den = mp::denominator(x);
    BigInt q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

BigRational root_upper(const BigRational& x, unsigned root, unsigned bits) {
    if (x < 0) throw DomainError("root of negative rational");
    if (root == 0) throw DomainError("zeroth root");
    if (x == 0) return BigRational(0);
    const BigInt scale = BigInt(1) << bits;
    // (k / 2^bits)^root >= x  <=>  k^root >= x * 2^(bits*root)
    const BigRational target = x * pow_big(BigRational(scale), root);
    BigInt lo = 0;
    BigInt hi = 1;
    while (BigRational(mp::pow(hi, root)) < target) hi <<= 1;
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) >> 1;
        if (BigRational(mp::pow(mid, root)) >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return BigRational(hi, scale);
}

bool within_root_bound(const BigRational& value, const BigRational& coef, const BigRational& eps, unsigned root,
                       const BigRational& n) {
    if (value <= 0) return true;
    if (coef <= 0 || n <= 0 || eps <= 0) return false;
    // value <= coef * eps^(1/root) * n  <=>  (value / (coef * n))^root <= eps
    return pow_big(value / (coef * n), root) <= eps;
}

} // namespace sumsetlab
