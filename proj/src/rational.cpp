#include "sumsetlab/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace sumsetlab {

namespace {

constexpr int128 kInt128Min = static_cast<int128>(static_cast<unsigned __int128>(1) << 127);

int128 abs128(int128 v) {
    if (v == kInt128Min) throw ArithmeticError("rational overflow (abs of int128 min)");
    return v < 0 ? -v : v;
}

} // namespace

int128 gcd128(int128 a, int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string to_string(int128 value) {
    if (value == 0) return "0";
    const bool neg = value < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(value + 1)) + 1 : static_cast<unsigned __int128>(value);
    std::string out;
    while (u != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

int128 Rational::checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("rational overflow in multiplication");
    return r;
}

int128 Rational::checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("rational overflow in addition");
    return r;
}

int128 Rational::checked_neg(int128 a) {
    if (a == kInt128Min) throw ArithmeticError("rational overflow in negation");
    return -a;
}

void Rational::normalize() {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    if (den_ < 0) {
        num_ = checked_neg(num_);
        den_ = checked_neg(den_);
    }
    const int128 g = gcd128(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational{Rational::checked_add(a.num_, b.num_), a.den_};
    const int128 g = gcd128(a.den_, b.den_);
    const int128 da = a.den_ / g;
    const int128 db = b.den_ / g;
    const int128 num = Rational::checked_add(Rational::checked_mul(a.num_, db), Rational::checked_mul(b.num_, da));
    return Rational{num, Rational::checked_mul(a.den_, db)};
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce first to keep intermediates small.
    const int128 g1 = gcd128(a.num_, b.den_);
    const int128 g2 = gcd128(b.num_, a.den_);
    const int128 n1 = g1 ? a.num_ / g1 : a.num_;
    const int128 d2 = g1 ? b.den_ / g1 : b.den_;
    const int128 n2 = g2 ? b.num_ / g2 : b.num_;
    const int128 d1 = g2 ? a.den_ / g2 : a.den_;
    return Rational{Rational::checked_mul(n1, n2), Rational::checked_mul(d1, d2)};
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return a * Rational{b.den_, b.num_};
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    // Compare a - b against zero; subtraction is overflow-checked.
    const Rational diff = a - b;
    return diff.num_ <=> int128{0};
}

std::string Rational::str() const { return to_string(num_) + "/" + to_string(den_); }

std::int64_t Rational::floor() const {
    int128 q = num_ / den_;
    if (num_ < 0 && q * den_ != num_) --q;
    if (q > std::numeric_limits<std::int64_t>::max() || q < std::numeric_limits<std::int64_t>::min())
        throw ArithmeticError("floor out of 64-bit range");
    return static_cast<std::int64_t>(q);
}

double Rational::to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

Rational Rational::parse(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    if (text.empty()) throw ParseError("empty rational literal");

    auto parse_int = [&](const std::string& s) -> int128 {
        if (s.empty()) throw ParseError("bad rational literal: " + raw);
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw ParseError("bad rational literal: " + raw);
        int128 v = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw ParseError("bad rational literal: " + raw);
            v = checked_add(checked_mul(v, 10), s[i] - '0');
        }
        return neg ? -v : v;
    };

    if (auto slash = text.find('/'); slash != std::string::npos)
        return Rational{parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};

    int exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        const int128 ex = parse_int(text.substr(e + 1));
        if (ex > 60 || ex < -60) throw ParseError("exponent out of range: " + raw);
        exponent = static_cast<int>(ex);
        text = text.substr(0, e);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        const std::string frac = text.substr(dot + 1);
        text = text.substr(0, dot) + frac;
        exponent -= static_cast<int>(frac.size());
        if (text == "-" || text == "+" || text.empty()) throw ParseError("bad rational literal: " + raw);
    }
    int128 num = parse_int(text);
    int128 den = 1;
    for (; exponent > 0; --exponent) num = checked_mul(num, 10);
    for (; exponent < 0; ++exponent) den = checked_mul(den, 10);
    return Rational{num, den};
}

} // namespace sumsetlab
