#pragma once

#include "fpsynt/dfg.hpp"
#include "fpsynt/error.hpp"
#include "fpsynt/numeric.hpp"
#include "fpsynt/sif.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpsynt {

struct InputBinding {
  std::string name;
  SifFormat fmt;
  int line = 0;
};

struct ConstBinding {
  std::string name;
  /// Exact decimal value of the literal.
  Rational value;
  /// Literal text as written, used for the floating-point reference.
  std::string text;
  /// True for numbers written inline in an expression.
  bool literal = false;
  int line = 0;
};

/// Declared names of a spec. Names are unique across all three lists.
struct Bindings {
  std::vector<InputBinding> inputs;
  std::vector<ConstBinding> consts;
  std::vector<std::string> outputs;

  const InputBinding* input(std::string_view name) const;
  const ConstBinding* constant(std::string_view name) const;
  /// Index of an input in declaration order.
  std::optional<std::size_t> input_index(std::string_view name) const;
};

struct ParsedSpec {
  Dfg dfg;
  Bindings bindings;
};

/// Parses `.fps` source text. Expression structure is kept as written
/// (left-associative where unparenthesized); `a - b` becomes an Add with
/// its second operand negated. Mul/Add nodes are named t0, t1, ... in
/// topological order. Throws ParseError.
ParsedSpec parse_spec(std::string_view source);

/// Checks every declared format against the core invariants and max_width,
/// and every constant against the widest representable magnitude. Returns
/// all violations; an empty vector means the bindings are valid.
std::vector<Diagnostic> validate_formats(const Bindings& bindings, int max_width);

/// Renders the spec back to `.fps` text with explicit parentheses wherever
/// needed to reproduce the parsed tree shape.
std::string print_spec(const ParsedSpec& spec);

}  // namespace fpsynt
