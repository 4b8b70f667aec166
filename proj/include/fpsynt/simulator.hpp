#pragma once

#include "fpsynt/dfg.hpp"
#include "fpsynt/frontend.hpp"
#include "fpsynt/numeric.hpp"

#include <cstdint>
#include <istream>
#include <vector>

namespace fpsynt {

/// One input sample per declared input, already quantized (Round) to the
/// declared input formats. Order follows Bindings::inputs.
struct TestVector {
  std::vector<Raw> raws;
};

/// Quantizes real input values onto the declared input formats.
TestVector make_vector(const Bindings& bindings, const std::vector<Rational>& values);
TestVector make_vector(const Bindings& bindings, const std::vector<double>& values);

/// Exact decoded input values of a vector.
std::vector<Rational> vector_values(const Bindings& bindings, const TestVector& v);

struct FixedResult {
  /// Raw output words, in output declaration order.
  std::vector<Raw> raws;
  /// Semantic values raw * 2^(E - f).
  std::vector<Rational> values;
};

/// Bit-accurate execution of an annotated plan graph. Throws
/// InvariantViolation naming the node when any raw word leaves its format.
FixedResult run_fixed(const Dfg& plan, const Bindings& bindings, const TestVector& vector);

/// Evaluates the source (unformatted) graph in double precision, with
/// constants read from their literal text. Input values are taken as given
/// (no quantization); the TestVector overload decodes the quantized words.
std::vector<double> run_reference(const Bindings& bindings, const Dfg& source, const std::vector<double>& inputs);
std::vector<double> run_reference(const Bindings& bindings, const Dfg& source, const TestVector& vector);

/// Same, in exact rational arithmetic with exact constants.
std::vector<Rational> run_reference_exact(const Bindings& bindings, const Dfg& source,
                                          const std::vector<Rational>& inputs);
std::vector<Rational> run_reference_exact(const Bindings& bindings, const Dfg& source, const TestVector& vector);

struct ErrorStats {
  double min = 0;
  double max = 0;
  double mean = 0;
  /// Lower-middle element for even counts.
  double median = 0;
  std::size_t count = 0;
};

ErrorStats summarize(std::vector<double> deviations);

/// Per-vector deviation: max over outputs of |fixed - double reference|.
std::vector<double> deviations(const Dfg& plan, const Bindings& bindings, const Dfg& source,
                               const std::vector<TestVector>& vectors);

ErrorStats compare(const Dfg& plan, const Bindings& bindings, const Dfg& source,
                   const std::vector<TestVector>& vectors);

/// n uniform random vectors over each input's decoded range, preceded by
/// the all-zero, all-minimum and all-maximum vectors.
std::vector<TestVector> generate_vectors(const Bindings& bindings, std::size_t n, std::uint64_t seed);

/// Reads a CSV vector file: a header naming the inputs in declaration
/// order, then one decimal value per input per row. Throws VectorFileError
/// naming the offending row.
std::vector<TestVector> read_vectors(std::istream& in, const Bindings& bindings);

}  // namespace fpsynt
