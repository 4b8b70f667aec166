#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace fpsynt {

/// Raw two's-complement words. 256 bits covers full products of two
/// 64-bit operands plus accumulator growth; overflow throws.
using Raw = boost::multiprecision::checked_int256_t;

/// Exact rationals for constants, error bounds and the reference model.
using Rational = boost::multiprecision::cpp_rational;

/// 2^k as a raw integer, k >= 0.
Raw pow2(int k);

/// 2^e as an exact rational, any sign of e.
Rational pow2_rational(int e);

/// raw * 2^exponent, exactly.
Rational dyadic(const Raw& raw, int exponent);

Rational to_rational(const Raw& raw);

/// floor(value / 2^k) for k >= 0 (arithmetic shift right).
Raw floor_shift(const Raw& value, int k);

/// floor(value), exactly.
Raw floor_rational(const Rational& value);

/// Nearest integer, ties away from zero.
Raw round_half_away(const Rational& value);

Rational abs(const Rational& value);

double to_double(const Rational& value);
double to_double(const Raw& value);

/// raw * 2^exponent as a double (exact when |raw| < 2^53).
double dyadic_double(const Raw& raw, int exponent);

/// Smallest n >= 1 with [lo, hi] inside [-2^(n-1), 2^(n-1) - 1].
int bits_needed(const Raw& lo, const Raw& hi);

/// Parses an unsigned or signed decimal literal ("0.15", "-3", "1.5e-3")
/// as an exact rational. Throws std::invalid_argument on malformed text.
Rational parse_decimal(std::string_view text);

std::string to_string(const Raw& value);

}  // namespace fpsynt
