#include "fpsynt/analysis.hpp"

#include "fpsynt/error.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fpsynt {

NodeEvaluation evaluate_node(const Node& node, std::span<const SignalState* const> operands,
                             const FormatChoice& choice, const NodeContext& ctx) {
  const int width = ctx.config.width;
  NodeEvaluation ev;
  switch (node.kind) {
    case NodeKind::Input: {
      if (ctx.bindings == nullptr) throw std::logic_error("evaluate_node: input needs bindings");
      const InputBinding* in = ctx.bindings->input(node.name);
      if (in == nullptr) throw std::logic_error("evaluate_node: unbound input '" + node.name + "'");
      if (in->fmt.width() > width) {
        throw CannotFitError("input '" + node.name + "' " + in->fmt.str() + " is wider than the " +
                             std::to_string(width) + "-bit datapath");
      }
      ev.core = ev.out = input_state(in->fmt);
      break;
    }
    case NodeKind::Const: {
      if (ctx.bindings == nullptr) throw std::logic_error("evaluate_node: const needs bindings");
      const ConstBinding* c = ctx.bindings->constant(node.name);
      if (c == nullptr) throw std::logic_error("evaluate_node: unbound const '" + node.name + "'");
      QuantizedConst q = quantize_constant(c->value, width, ctx.config.quantize);
      ev.core = ev.out = q.state;
      ev.const_raw = q.raw;
      ev.local_error = q.quantization_error;
      break;
    }
    case NodeKind::Mul: {
      ev.core = product_state(*operands[0], *operands[1]);
      FormatStep step = insert_truncate(ev.core, width, choice.truncate_extra);
      ev.out = step.state;
      ev.local_error = step.added_error;
      ev.result_step = std::move(step);
      break;
    }
    case NodeKind::Add: {
      PrescaleResult r;
      if (ctx.add_mode == AddMode::Pairwise) {
        r = insert_prescale(*operands[0], *operands[1], node.negate, choice.shift, width);
      } else {
        const int acc = ctx.accumulator_width;
        if (acc < width) throw std::logic_error("evaluate_node: accumulator narrower than the datapath");
        r = insert_prescale(*operands[0], *operands[1], node.negate, {0, 0}, acc, acc);
      }
      ev.core = ev.out = r.sum;
      for (int k = 0; k < 2; ++k) {
        ev.local_error += r.operands[k].added_error;
        ev.operand_steps[k] = std::move(r.operands[k]);
      }
      if (ctx.add_mode == AddMode::ChainRoot) {
        FormatStep step = insert_truncate(ev.core, width, 0);
        ev.out = step.state;
        ev.local_error += step.added_error;
        ev.result_step = std::move(step);
      }
      break;
    }
    case NodeKind::Output:
      ev.core = ev.out = *operands[0];
      break;
    case NodeKind::ShiftRight:
    case NodeKind::Truncate:
      throw std::logic_error("evaluate_node: formatting nodes are inserted by analysis, not evaluated");
  }
  return ev;
}

FormatAssignment FormatAssignment::defaults(std::size_t node_count) {
  FormatAssignment a;
  a.choices.assign(node_count, FormatChoice{});
  a.add_modes.assign(node_count, AddMode::Pairwise);
  a.accumulator_widths.assign(node_count, 0);
  return a;
}

namespace {

// Inserted names must avoid both the nodes built so far and every source
// name still to come.
std::string unique_name(const Dfg& g, const Dfg& source, const std::string& base) {
  auto taken = [&](const std::string& s) { return g.find(s) || source.find(s); };
  if (!taken(base)) return base;
  for (int n = 2;; ++n) {
    std::string candidate = base + "_" + std::to_string(n);
    if (!taken(candidate)) return candidate;
  }
}

void stamp(Node& n, const SignalState& st, const Rational& local) {
  n.signal = st.signal;
  n.interval = st.interval;
  n.error.quantization = local;
  n.error.accumulated = st.error;
}

NodeId add_format_node(Dfg& g, const Dfg& source, NodeKind kind, NodeId src, const std::string& base, const FormatStep& step) {
  Node n;
  n.name = unique_name(g, source, base);
  n.kind = kind;
  n.operands = {src};
  n.amount = step.dropped;
  stamp(n, step.state, step.added_error);
  return g.add(std::move(n));
}

}  // namespace

Dfg annotate(const Dfg& source, const Bindings& bindings, const FormatAssignment& assignment,
             const AnalysisConfig& config) {
  const std::size_t n = source.size();
  if (assignment.choices.size() != n || assignment.add_modes.size() != n || assignment.accumulator_widths.size() != n) {
    throw std::invalid_argument("annotate: assignment does not match the graph");
  }
  Dfg out;
  std::vector<NodeId> mapped(n);
  std::vector<SignalState> states(n);

  for (NodeId id : source.topo_order()) {
    const Node& src = source[id];
    NodeContext ctx{config, assignment.add_modes[id], assignment.accumulator_widths[id], &bindings};
    std::vector<const SignalState*> ops;
    for (NodeId op : src.operands) ops.push_back(&states[op]);
    NodeEvaluation ev = evaluate_node(src, ops, assignment.choices[id], ctx);

    Node core;
    core.name = src.name;
    core.kind = src.kind;
    core.negate = src.negate;
    core.const_raw = ev.const_raw;
    for (std::size_t k = 0; k < src.operands.size(); ++k) {
      NodeId operand = mapped[src.operands[k]];
      const auto& step = ev.operand_steps[k];
      if (step && step->changes()) {
        const std::string base = out[operand].name + "_sr" + std::to_string(step->dropped);
        operand = add_format_node(out, source, NodeKind::ShiftRight, operand, base, *step);
      }
      core.operands.push_back(operand);
    }
    const Rational core_local = src.kind == NodeKind::Const ? ev.local_error : Rational(0);
    stamp(core, ev.core, core_local);
    NodeId result = out.add(std::move(core));
    if (ev.result_step && ev.result_step->changes()) {
      result = add_format_node(out, source, NodeKind::Truncate, result, src.name + "_q", *ev.result_step);
    }
    mapped[id] = result;
    states[id] = ev.out;
  }
  return out;
}

Rational output_error_bound(const Dfg& annotated) {
  Rational worst = 0;
  for (NodeId id : annotated.outputs()) worst = std::max(worst, annotated[id].error.accumulated);
  return worst;
}

}  // namespace fpsynt
