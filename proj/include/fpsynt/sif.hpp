#pragma once

#include "fpsynt/numeric.hpp"

#include <compare>
#include <cstdint>
#include <string>

namespace fpsynt {

/// Sign/integer/fraction partition of a two's-complement word.
///
/// A word with format (s/i/f) is s + i + f bits wide. The s - 1 extra sign
/// bits are stored (sign-extended) copies of the sign, so the raw value
/// ranges over [-2^(i+f), 2^(i+f) - 1] and decodes to raw * 2^-f.
struct SifFormat {
  int s = 1;
  int i = 0;
  int f = 0;

  constexpr int width() const noexcept { return s + i + f; }

  Raw raw_min() const;
  Raw raw_max() const;
  bool contains(const Raw& raw) const;

  /// "(s/i/f)"
  std::string str() const;

  friend auto operator<=>(const SifFormat&, const SifFormat&) = default;
};

int sif_width(const SifFormat& fmt);

/// Returns an empty string when fmt is well-formed and at most max_width
/// bits wide, otherwise a description of the first violated constraint.
std::string check_format(const SifFormat& fmt, int max_width);

enum class QuantizeMode { Round, Trunc };

/// Real value of a signed raw word. Throws MalformedRawError when raw lies
/// outside the format's representable range, i.e. when the redundant sign
/// bits would disagree.
Rational decode(const Raw& raw, const SifFormat& fmt);

/// Same as decode, but takes the word as a width(fmt)-bit pattern.
Rational decode_bits(std::uint64_t pattern, const SifFormat& fmt);

/// Quantizes v onto the format's grid. Round is nearest with ties away from
/// zero; Trunc rounds toward minus infinity. Throws OverflowError when v is
/// outside [-2^i, 2^i - 2^-f].
Raw encode(const Rational& v, const SifFormat& fmt, QuantizeMode mode = QuantizeMode::Round);
Raw encode(double v, const SifFormat& fmt, QuantizeMode mode = QuantizeMode::Round);

/// A format plus the binary scale exponent E accumulated by pre-scaling
/// shifts: semantic value = raw * 2^-f * 2^E.
struct ScaledSignal {
  SifFormat fmt;
  int scale = 0;

  /// Weight exponent of the least significant stored bit (E - f).
  constexpr int lsb() const noexcept { return scale - fmt.f; }
  constexpr int width() const noexcept { return fmt.width(); }

  Rational value(const Raw& raw) const { return dyadic(raw, lsb()); }

  friend auto operator<=>(const ScaledSignal&, const ScaledSignal&) = default;
};

}  // namespace fpsynt
