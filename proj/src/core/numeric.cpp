#include "fpsynt/numeric.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace fpsynt {

namespace mp = boost::multiprecision;

Raw pow2(int k) {
  if (k < 0) throw std::invalid_argument("pow2: negative exponent");
  Raw one = 1;
  return one << k;
}

Rational pow2_rational(int e) {
  mp::cpp_int p = 1;
  p <<= (e < 0 ? -e : e);
  return e < 0 ? Rational(mp::cpp_int(1), p) : Rational(p);
}

Rational to_rational(const Raw& raw) { return Rational(mp::cpp_int(raw)); }

Rational dyadic(const Raw& raw, int exponent) {
  return to_rational(raw) * pow2_rational(exponent);
}

Raw floor_shift(const Raw& value, int k) {
  if (k < 0) throw std::invalid_argument("floor_shift: negative shift");
  if (k == 0) return value;
  if (value >= 0) return value >> k;
  // Bitwise ops on negative checked ints are rejected, so go through the
  // magnitude: floor(-m / 2^k) = -ceil(m / 2^k).
  Raw magnitude = -value;
  Raw bias = pow2(k) - 1;
  return -((magnitude + bias) >> k);
}

Raw floor_rational(const Rational& value) {
  mp::cpp_int num = mp::numerator(value);
  mp::cpp_int den = mp::denominator(value);
  mp::cpp_int q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return Raw(q);
}

Raw round_half_away(const Rational& value) {
  Rational half(mp::cpp_int(1), mp::cpp_int(2));
  if (value >= 0) return floor_rational(value + half);
  return -floor_rational(-value + half);
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

double to_double(const Rational& value) { return value.convert_to<double>(); }

double to_double(const Raw& value) { return value.convert_to<double>(); }

double dyadic_double(const Raw& raw, int exponent) {
  return std::ldexp(to_double(raw), exponent);
}

int bits_needed(const Raw& lo, const Raw& hi) {
  int n = 1;
  while (lo < -pow2(n - 1) || hi > pow2(n - 1) - 1) ++n;
  return n;
}

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  mp::cpp_int digits = 0;
  int scale = 0;  // value = digits * 10^scale
  bool any_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits = digits * 10 + (text[pos] - '0');
    any_digit = true;
    ++pos;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits = digits * 10 + (text[pos] - '0');
      --scale;
      any_digit = true;
      ++pos;
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    int exponent = 0;
    bool exp_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      exponent = exponent * 10 + (text[pos] - '0');
      if (exponent > 4000) throw std::invalid_argument("exponent out of range");
      exp_digit = true;
      ++pos;
    }
    if (!exp_digit) throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
    scale += exp_negative ? -exponent : exponent;
  }
  if (pos != text.size()) throw std::invalid_argument("trailing characters in '" + std::string(text) + "'");

  mp::cpp_int ten_power = mp::pow(mp::cpp_int(10), scale < 0 ? -scale : scale);
  Rational value = scale < 0 ? Rational(digits, ten_power) : Rational(digits * ten_power);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Raw& value) { return value.str(); }

}  // namespace fpsynt
