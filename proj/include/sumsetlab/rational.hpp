#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

using int128 = __int128;

/// Exact rational with 128-bit numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator, so equality is
/// structural. Every operation is overflow-checked and throws ArithmeticError
/// instead of wrapping. Sized for the theorem oracles, whose values are ratios
/// of set sizes and products of a few 64-bit quantities.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {} // NOLINT(implicit)
    Rational(int128 num, int128 den) : num_(num), den_(den) { normalize(); }

    [[nodiscard]] int128 num() const { return num_; }
    [[nodiscard]] int128 den() const { return den_; }
    [[nodiscard]] bool is_integer() const { return den_ == 1; }
    [[nodiscard]] int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational{checked_neg(num_), den_}; }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p/q" with q > 0, including "/1" for integers.
    [[nodiscard]] std::string str() const;
    [[nodiscard]] double to_double() const;
    /// Largest integer <= this value.
    [[nodiscard]] std::int64_t floor() const;

    /// Parses "p/q", "p", or an exact decimal like "0.04" / "1e-3".
    static Rational parse(const std::string& text);

    static int128 checked_mul(int128 a, int128 b);
    static int128 checked_add(int128 a, int128 b);
    static int128 checked_neg(int128 a);

  private:
    void normalize();

    int128 num_ = 0;
    int128 den_ = 1;
};

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

int128 gcd128(int128 a, int128 b);
std::string to_string(int128 value);

} // namespace sumsetlab
