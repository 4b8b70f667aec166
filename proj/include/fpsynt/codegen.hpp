#pragma once

#include "fpsynt/frontend.hpp"
#include "fpsynt/numeric.hpp"
#include "fpsynt/optimizer.hpp"

#include <string>

namespace fpsynt {

/// Integer literal for c at f fraction bits: c*2^f rounded half away from
/// zero. Throws CannotFitError when |c| >= 2^(working_width - f - 1).
Raw quantize_const(const Rational& c, int f, int working_width = 64);

enum class Language { C, Vhdl };

struct EmittedArtifact {
  Language language = Language::C;
  std::string text;
};

/// Bits of the C integer type that holds every signal of the plan: 32 or
/// 64. Throws EmitError when some signal is wider than 64 bits.
int host_type_bits(const SynthesisPlan& plan);

/// Turns a file stem into a valid C / VHDL identifier.
std::string sanitize_identifier(const std::string& stem);

/// C function `void <name>(T in0, ..., T *out)` computing every output as
/// one expression over raw integer words.
EmittedArtifact emit_c(const SynthesisPlan& plan, const Bindings& bindings, const std::string& name);

/// Combinational VHDL entity over numeric_std signed vectors.
EmittedArtifact emit_vhdl(const SynthesisPlan& plan, const Bindings& bindings, const std::string& name);

}  // namespace fpsynt
