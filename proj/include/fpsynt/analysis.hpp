#pragma once

#include "fpsynt/dfg.hpp"
#include "fpsynt/frontend.hpp"
#include "fpsynt/numeric.hpp"
#include "fpsynt/sif.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace fpsynt {

/// Everything the analysis knows about one signal: its format and scale,
/// the exact range of its fixed-point value, and the worst-case absolute
/// deviation of that value from exact evaluation.
struct SignalState {
  ScaledSignal signal;
  ValueInterval interval;
  Rational error = 0;
};

SignalState input_state(const SifFormat& fmt);

struct QuantizedConst {
  SignalState state;
  Raw raw = 0;
  /// |value - decoded(raw)|
  Rational quantization_error = 0;
};

/// Quantizes a constant into a width-bit word with one sign bit, the fewest
/// integer bits that hold it, and all remaining bits as fraction. Throws
/// CannotFitError when no integer/fraction split holds the value.
QuantizedConst quantize_constant(const Rational& value, int width, QuantizeMode mode);

/// Range of a ± b. negate[k] subtracts operand k.
ValueInterval interval_add(const ValueInterval& a, const ValueInterval& b, std::array<bool, 2> negate = {false, false});

/// Range of a * b from the four corner products.
ValueInterval interval_mul(const ValueInterval& a, const ValueInterval& b);

/// Range after an arithmetic shift right by k (floor of each bound).
ValueInterval interval_shift(const ValueInterval& a, int k);

/// Full-precision product format by the bit-count rule:
/// (s_a+s_b / i_a+i_b / f_a+f_b), scale E_a+E_b.
ScaledSignal infer_product_format(const ScaledSignal& a, const ScaledSignal& b);

/// Exact product of two signals. The word keeps width(a)+width(b) bits and
/// f_a+f_b fraction bits; integer bits are the fewest that hold the product
/// range (the remainder are sign bits).
SignalState product_state(const SignalState& a, const SignalState& b);

/// Error carried into a Mul or Add from its operands, before any local
/// formatting loss:
///   Add: e_a + e_b
///   Mul: M_a*e_b + M_b*e_a + e_a*e_b, M = max |value| over the operand range.
Rational propagate_error(NodeKind kind, const SignalState& a, const SignalState& b);

/// Result of one formatting operation applied to a signal.
struct FormatStep {
  SignalState state;
  /// Low bits discarded.
  int dropped = 0;
  /// Worst-case one-sided loss: (2^dropped - 1) * 2^lsb_before.
  Rational added_error = 0;
  /// The word lost redundant sign bits.
  bool narrowed = false;
  /// True when the word changed (bits dropped or width reduced).
  bool changes() const;
};

/// Narrows a signal to at most target_width bits: drops every redundant sign
/// bit, then as many fraction LSBs as needed, plus extra_bits more. Scale is
/// unchanged. Throws CannotFitError when the fraction bits run out.
FormatStep insert_truncate(const SignalState& node, int target_width, int extra_bits = 0);

/// Arithmetic shift right by k: same word and labels, scale += k.
FormatStep shift_right(const SignalState& node, int k);

struct PrescaleResult {
  std::array<FormatStep, 2> operands;
  SignalState sum;
};

/// Adds two signals after shifting operand k right by shifts[k]. The finer
/// operand is shifted further until both share one LSB weight. The sum gets
/// the larger operand scale, the fraction bits implied by the common LSB,
/// and the fewest integer bits that hold its range. With result_width == 0
/// the sum takes exactly the bits it needs, which must not exceed
/// width_limit; otherwise the sum word is result_width bits. Throws
/// CannotFitError when the range does not fit.
PrescaleResult insert_prescale(const SignalState& a, const SignalState& b, std::array<bool, 2> negate,
                               std::array<int, 2> shifts, int width_limit, int result_width = 0);

/// Interval-driven pre-scaling: the fewest total shift bits (ties resolved
/// toward shifting the second operand) that make the sum fit width_limit.
PrescaleResult insert_prescale(const SignalState& a, const SignalState& b, std::array<bool, 2> negate,
                               int width_limit);

// ---------------------------------------------------------------------------
// Whole-graph annotation

/// Formatting decision attached to one Mul or Add node of the source graph.
struct FormatChoice {
  /// Mul: fraction bits dropped beyond what the word width requires.
  int truncate_extra = 0;
  /// Add: pre-scale shift applied to each operand (alignment comes on top).
  std::array<int, 2> shift{0, 0};

  friend bool operator==(const FormatChoice&, const FormatChoice&) = default;
};

enum class AddMode {
  /// Pre-scaled add whose result fits the word width.
  Pairwise,
  /// Wide-accumulator add inside an addition chain; no pre-scaling.
  ChainInterior,
  /// Last add of a chain; its accumulator is truncated back to the width.
  ChainRoot,
};

struct AnalysisConfig {
  int width = 16;
  QuantizeMode quantize = QuantizeMode::Round;
};

struct NodeContext {
  AnalysisConfig config;
  AddMode add_mode = AddMode::Pairwise;
  int accumulator_width = 0;
  const Bindings* bindings = nullptr;
};

struct NodeEvaluation {
  /// State seen by consumers (after any result formatting).
  SignalState out;
  /// State of the node's own word (before result formatting).
  SignalState core;
  std::array<std::optional<FormatStep>, 2> operand_steps;
  std::optional<FormatStep> result_step;
  Raw const_raw = 0;
  Rational local_error = 0;
};

/// Evaluates a single source-graph node given its operand states. Throws
/// CannotFitError when the choice leaves no overflow-free format.
NodeEvaluation evaluate_node(const Node& node, std::span<const SignalState* const> operands,
                             const FormatChoice& choice, const NodeContext& context);

/// Per-node decisions for annotate(), indexed by source NodeId.
struct FormatAssignment {
  std::vector<FormatChoice> choices;
  std::vector<AddMode> add_modes;
  std::vector<int> accumulator_widths;

  static FormatAssignment defaults(std::size_t node_count);
};

/// Builds the annotated graph for a source graph and a format assignment:
/// every node carries its SIF format, scale, range and error bound, and
/// ShiftRight/Truncate nodes are inserted where formatting is applied.
Dfg annotate(const Dfg& source, const Bindings& bindings, const FormatAssignment& assignment,
             const AnalysisConfig& config);

/// max over Output nodes of the accumulated error bound.
Rational output_error_bound(const Dfg& annotated);

}  // namespace fpsynt
