#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "sumsetlab/rational.hpp"

namespace sumsetlab {

/// Arbitrary-precision rational for the stability-constant chain, where
/// denominators outgrow 128 bits after a few substitutions.
using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

BigRational to_big(const Rational& r);
BigRational to_big(std::int64_t v);

/// Exact decimal or fraction literal ("1e-10", "0.04", "3/7").
BigRational parse_big_rational(const std::string& text);

/// "p/q" with q > 0.
std::string big_str(const BigRational& r);
double big_to_double(const BigRational& r);
/// Decimal rendering to `digits` significant digits, e.g. "6.554e+04".
std::string big_sci(const BigRational& r, int digits);

/// Smallest k / 2^bits with (k / 2^bits)^root >= x, for x >= 0.
///
/// An upper rational approximation of x^(1/root) with resolution 2^-bits;
/// exact when x^(1/root) is itself a multiple of 2^-bits.
BigRational root_upper(const BigRational& x, unsigned root, unsigned bits);

/// value <= coef * eps^(1/root) * n, decided exactly for value, coef, n >= 0.
bool within_root_bound(const BigRational& value, const BigRational& coef, const BigRational& eps, unsigned root,
                       const BigRational& n);

BigRational pow_big(const BigRational& x, unsigned e);
BigInt floor_big(const BigRational& x);

} // namespace sumsetlab
