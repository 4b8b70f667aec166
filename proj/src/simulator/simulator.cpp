#include "fpsynt/simulator.hpp"

#include "fpsynt/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace fpsynt {

FixedResult run_fixed(const Dfg& plan, const Bindings& bindings, const TestVector& vector) {
  if (vector.raws.size() != bindings.inputs.size()) {
    throw std::invalid_argument("run_fixed: vector has " + std::to_string(vector.raws.size()) + " values for " +
                                std::to_string(bindings.inputs.size()) + " inputs");
  }
  std::vector<Raw> raw(plan.size());
  for (NodeId id : plan.topo_order()) {
    const Node& n = plan[id];
    Raw v = 0;
    switch (n.kind) {
      case NodeKind::Input: {
        const auto index = bindings.input_index(n.name);
        if (!index) throw std::invalid_argument("run_fixed: unbound input '" + n.name + "'");
        v = vector.raws[*index];
        break;
      }
      case NodeKind::Const:
        v = n.const_raw;
        break;
      case NodeKind::Mul:
        v = raw[n.operands[0]] * raw[n.operands[1]];
        break;
      case NodeKind::Add: {
        const Node& a = plan[n.operands[0]];
        const Node& b = plan[n.operands[1]];
        if (a.signal.lsb() != b.signal.lsb()) {
          throw InvariantViolation("node '" + n.name + "': operands '" + a.name + "' and '" + b.name +
                                   "' are not aligned");
        }
        const Raw x = n.negate[0] ? Raw(-raw[n.operands[0]]) : raw[n.operands[0]];
        const Raw y = n.negate[1] ? Raw(-raw[n.operands[1]]) : raw[n.operands[1]];
        v = x + y;
        break;
      }
      case NodeKind::ShiftRight:
      case NodeKind::Truncate:
        v = floor_shift(raw[n.operands[0]], n.amount);
        break;
      case NodeKind::Output:
        v = raw[n.operands[0]];
        break;
    }
    if (!n.signal.fmt.contains(v)) {
      throw InvariantViolation("node '" + n.name + "': raw " + to_string(v) + " overflows " + n.signal.fmt.str());
    }
    raw[id] = v;
  }
  FixedResult r;
  for (NodeId id : plan.outputs()) {
    r.raws.push_back(raw[id]);
    r.values.push_back(plan[id].signal.value(raw[id]));
  }
  return r;
}

namespace {

template <typename T, typename Input, typename Const>
std::vector<T> evaluate(const Dfg& source, Input input, Const constant) {
  std::vector<T> val(source.size());
  for (NodeId id : source.topo_order()) {
    const Node& n = source[id];
    switch (n.kind) {
      case NodeKind::Input: val[id] = input(n.name); break;
      case NodeKind::Const: val[id] = constant(n.name); break;
      case NodeKind::Mul: val[id] = val[n.operands[0]] * val[n.operands[1]]; break;
      case NodeKind::Add: {
        const T a = n.negate[0] ? T(-val[n.operands[0]]) : val[n.operands[0]];
        const T b = n.negate[1] ? T(-val[n.operands[1]]) : val[n.operands[1]];
        val[id] = a + b;
        break;
      }
      case NodeKind::ShiftRight:
      case NodeKind::Truncate:
        throw std::invalid_argument("reference evaluation expects an unformatted graph");
      case NodeKind::Output: val[id] = val[n.operands[0]]; break;
    }
  }
  std::vector<T> out;
  for (NodeId id : source.outputs()) out.push_back(val[id]);
  return out;
}

std::size_t input_index_of(const Bindings& b, const std::string& name) {
  const auto index = b.input_index(name);
  if (!index) throw std::invalid_argument("unbound input '" + name + "'");
  return *index;
}

const ConstBinding& const_of(const Bindings& b, const std::string& name) {
  const ConstBinding* c = b.constant(name);
  if (c == nullptr) throw std::invalid_argument("unbound constant '" + name + "'");
  return *c;
}

}  // namespace

std::vector<double> run_reference(const Bindings& bindings, const Dfg& source, const std::vector<double>& inputs) {
  return evaluate<double>(
      source, [&](const std::string& name) { return inputs.at(input_index_of(bindings, name)); },
      [&](const std::string& name) { return std::strtod(const_of(bindings, name).text.c_str(), nullptr); });
}

std::vector<double> run_reference(const Bindings& bindings, const Dfg& source, const TestVector& vector) {
  std::vector<double> inputs;
  for (std::size_t k = 0; k < vector.raws.size(); ++k) {
    inputs.push_back(dyadic_double(vector.raws[k], -bindings.inputs.at(k).fmt.f));
  }
  return run_reference(bindings, source, inputs);
}

std::vector<Rational> run_reference_exact(const Bindings& bindings, const Dfg& source,
                                          const std::vector<Rational>& inputs) {
  return evaluate<Rational>(
      source, [&](const std::string& name) { return inputs.at(input_index_of(bindings, name)); },
      [&](const std::string& name) { return const_of(bindings, name).value; });
}

std::vector<Rational> run_reference_exact(const Bindings& bindings, const Dfg& source, const TestVector& vector) {
  return run_reference_exact(bindings, source, vector_values(bindings, vector));
}

ErrorStats summarize(std::vector<double> d) {
  if (d.empty()) throw std::invalid_argument("summarize: no deviations");
  std::sort(d.begin(), d.end());
  ErrorStats s;
  s.count = d.size();
  s.min = d.front();
  s.max = d.back();
  s.median = d[(d.size() - 1) / 2];
  s.mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

std::vector<double> deviations(const Dfg& plan, const Bindings& bindings, const Dfg& source,
                               const std::vector<TestVector>& vectors) {
  std::vector<double> out;
  out.reserve(vectors.size());
  for (const TestVector& v : vectors) {
    const FixedResult fixed = run_fixed(plan, bindings, v);
    const std::vector<double> ref = run_reference(bindings, source, v);
    double worst = 0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      worst = std::max(worst, std::fabs(to_double(fixed.values[k]) - ref[k]));
    }
    out.push_back(worst);
  }
  return out;
}

ErrorStats compare(const Dfg& plan, const Bindings& bindings, const Dfg& source,
                   const std::vector<TestVector>& vectors) {
  return summarize(deviations(plan, bindings, source, vectors));
}

}  // namespace fpsynt
