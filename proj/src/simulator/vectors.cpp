#include "fpsynt/simulator.hpp"

#include "fpsynt/error.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace fpsynt {

namespace {

template <typename T>
TestVector quantize_all(const Bindings& bindings, const std::vector<T>& values) {
  if (values.size() != bindings.inputs.size()) {
    throw std::invalid_argument("expected " + std::to_string(bindings.inputs.size()) + " input values, got " +
                                std::to_string(values.size()));
  }
  TestVector v;
  for (std::size_t k = 0; k < values.size(); ++k) {
    v.raws.push_back(encode(values[k], bindings.inputs[k].fmt, QuantizeMode::Round));
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

TestVector make_vector(const Bindings& bindings, const std::vector<Rational>& values) {
  return quantize_all(bindings, values);
}

TestVector make_vector(const Bindings& bindings, const std::vector<double>& values) {
  return quantize_all(bindings, values);
}

std::vector<Rational> vector_values(const Bindings& bindings, const TestVector& v) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < v.raws.size(); ++k) out.push_back(decode(v.raws[k], bindings.inputs.at(k).fmt));
  return out;
}

std::vector<TestVector> generate_vectors(const Bindings& bindings, std::size_t n, std::uint64_t seed) {
  std::vector<TestVector> out;
  TestVector zero, lo, hi;
  for (const InputBinding& in : bindings.inputs) {
    zero.raws.push_back(0);
    lo.raws.push_back(in.fmt.raw_min());
    hi.raws.push_back(in.fmt.raw_max());
  }
  out.push_back(std::move(zero));
  out.push_back(std::move(lo));
  out.push_back(std::move(hi));

  // Explicit mapping from the engine's output keeps vectors identical
  // across standard libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < n; ++k) {
    TestVector v;
    for (const InputBinding& in : bindings.inputs) {
      const double a = std::ldexp(1.0, in.fmt.i);
      const double b = a - std::ldexp(1.0, -in.fmt.f);
      const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
      const double x = std::min(b, -a + u * (a + b));
      v.raws.push_back(encode(x, in.fmt, QuantizeMode::Round));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<TestVector> read_vectors(std::istream& in, const Bindings& bindings) {
  std::vector<TestVector> out;
  std::string line;
  std::size_t row = 0;
  bool header = true;
  const std::size_t columns = bindings.inputs.size();
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != columns) {
      throw VectorFileError("row " + std::to_string(row) + ": expected " + std::to_string(columns) +
                            " columns, found " + std::to_string(cells.size()));
    }
    if (header) {
      for (std::size_t k = 0; k < columns; ++k) {
        if (cells[k] != bindings.inputs[k].name) {
          throw VectorFileError("row " + std::to_string(row) + ": column " + std::to_string(k + 1) + " is '" +
                                cells[k] + "', expected input '" + bindings.inputs[k].name + "'");
        }
      }
      header = false;
      continue;
    }
    TestVector v;
    for (std::size_t k = 0; k < columns; ++k) {
      try {
        v.raws.push_back(encode(parse_decimal(cells[k]), bindings.inputs[k].fmt, QuantizeMode::Round));
      } catch (const std::exception& e) {
        throw VectorFileError("row " + std::to_string(row) + ", column " + std::to_string(k + 1) + ": " +
                              e.what());
      }
    }
    out.push_back(std::move(v));
  }
  if (header) throw VectorFileError("row 1: missing header");
  if (out.empty()) throw VectorFileError("no vectors after the header");
  return out;
}

}  // namespace fpsynt
