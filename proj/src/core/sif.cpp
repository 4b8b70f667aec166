#include "fpsynt/sif.hpp"

#include "fpsynt/error.hpp"

#include <cmath>

namespace fpsynt {

Raw SifFormat::raw_min() const { return -pow2(i + f); }

Raw SifFormat::raw_max() const { return pow2(i + f) - 1; }

bool SifFormat::contains(const Raw& raw) const { return raw >= raw_min() && raw <= raw_max(); }

std::string SifFormat::str() const {
  return "(" + std::to_string(s) + "/" + std::to_string(i) + "/" + std::to_string(f) + ")";
}

int sif_width(const SifFormat& fmt) { return fmt.s + fmt.i + fmt.f; }

std::string check_format(const SifFormat& fmt, int max_width) {
  if (fmt.s < 1) return "sign bits must be >= 1";
  if (fmt.i < 0) return "integer bits must be >= 0";
  if (fmt.f < 0) return "fraction bits must be >= 0";
  if (fmt.width() > max_width) {
    return "width " + std::to_string(fmt.width()) + " exceeds maximum word width " +
           std::to_string(max_width);
  }
  return {};
}

Rational decode(const Raw& raw, const SifFormat& fmt) {
  if (!fmt.contains(raw)) {
    throw MalformedRawError("raw value " + to_string(raw) + " is not a valid " + fmt.str() +
                            " word (inconsistent sign bits)");
  }
  return dyadic(raw, -fmt.f);
}

Rational decode_bits(std::uint64_t pattern, const SifFormat& fmt) {
  const int w = fmt.width();
  if (w > 64) throw MalformedRawError("bit pattern decode supports widths up to 64");
  if (w < 64 && (pattern >> w) != 0) {
    throw MalformedRawError("bit pattern wider than " + std::to_string(w) + " bits");
  }
  Raw raw = Raw(pattern);
  if (w < 64 ? (pattern >> (w - 1)) & 1u : pattern >> 63) raw -= pow2(w);
  return decode(raw, fmt);
}

Raw encode(const Rational& v, const SifFormat& fmt, QuantizeMode mode) {
  const Rational lo = dyadic(fmt.raw_min(), -fmt.f);
  const Rational hi = dyadic(fmt.raw_max(), -fmt.f);
  if (v < lo || v > hi) {
    throw OverflowError("value " + std::to_string(to_double(v)) + " outside the range of " +
                        fmt.str());
  }
  const Rational scaled = v * pow2_rational(fmt.f);
  return mode == QuantizeMode::Round ? round_half_away(scaled) : floor_rational(scaled);
}

Raw encode(double v, const SifFormat& fmt, QuantizeMode mode) {
  if (!std::isfinite(v)) throw OverflowError("non-finite value cannot be encoded");
  return encode(Rational(v), fmt, mode);
}

}  // namespace fpsynt
