#include "fpsynt/codegen.hpp"

#include "fpsynt/error.hpp"

#include <cctype>

namespace fpsynt {

Raw quantize_const(const Rational& c, int f, int working_width) {
  if (f < 0) throw std::invalid_argument("quantize_const: negative fraction bits");
  const int magnitude_bits = working_width - f - 1;
  if (magnitude_bits < 0 || abs(c) >= pow2_rational(magnitude_bits)) {
    throw CannotFitError("constant " + std::to_string(to_double(c)) + " does not fit " + std::to_string(f) +
                         " fraction bits of a " + std::to_string(working_width) + "-bit word");
  }
  return round_half_away(c * pow2_rational(f));
}

std::string sanitize_identifier(const std::string& stem) {
  std::string out;
  for (char ch : stem) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) != 0;
    if (ok) {
      out += ch;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())) != 0) out = "fp_" + out;
  return out;
}

}  // namespace fpsynt
