#include "fpsynt/report.hpp"

#include "fpsynt/version.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>

namespace fpsynt {

namespace {

std::string operation(const Dfg& g, const Node& n) {
  auto name = [&](std::size_t k) { return g[n.operands[k]].name; };
  switch (n.kind) {
    case NodeKind::Input: return "input";
    case NodeKind::Const: return "const " + to_string(n.const_raw);
    case NodeKind::Mul: return name(0) + " * " + name(1);
    case NodeKind::Add:
      return (n.negate[0] ? "-" : "") + name(0) + (n.negate[1] ? " - " : " + ") + name(1);
    case NodeKind::ShiftRight: return fmt::format("{} >> {}", name(0), n.amount);
    case NodeKind::Truncate: return fmt::format("trunc({}, {})", name(0), n.amount);
    case NodeKind::Output: return name(0);
  }
  return {};
}

}  // namespace

nlohmann::ordered_json stats_json(const ErrorStats& stats) {
  nlohmann::ordered_json j;
  j["min"] = stats.min;
  j["max"] = stats.max;
  j["mean"] = stats.mean;
  j["median"] = stats.median;
  j["count"] = stats.count;
  return j;
}

nlohmann::ordered_json make_report(const SynthesisPlan& plan, const ReportContext& ctx) {
  using nlohmann::ordered_json;
  const OptimizerConfig& c = ctx.config;
  ordered_json j;
  j["tool"] = "fpsynt";
  j["version"] = std::string(kVersion);
  j["spec"] = ctx.spec_name;
  j["config"] = {
      {"width", c.width},
      {"quantize", c.quantize == QuantizeMode::Round ? "round" : "trunc"},
      {"k_max", c.k_max},
      {"n_max_topologies", c.n_max_topologies},
      {"enable_combinatorial", c.enable_combinatorial},
      {"enable_topology_opt", c.enable_topology_opt},
      {"enable_chain_alloc", c.enable_chain_alloc},
      {"accumulator_width_limit", c.accumulator_width_limit},
      {"emit", ctx.emit},
  };
  j["topology"] = plan.topology.description;
  j["predicted_bound"] = to_double(plan.output_bound);
  j["predicted_bound_exact"] = plan.output_bound.str();

  ordered_json chains = ordered_json::array();
  for (const AdditionChain& ch : plan.chains) {
    chains.push_back({{"root", plan.topology.dfg[ch.root].name},
                      {"terms", ch.terms()},
                      {"accumulator_width", accumulator_width(plan.width, ch.terms())}});
  }
  j["chains"] = std::move(chains);
  j["search"] = {{"visited", plan.stats.visited},
                 {"leaves", plan.stats.leaves},
                 {"pruned", plan.stats.pruned},
                 {"infeasible", plan.stats.infeasible}};
  j["warnings"] = plan.warnings;

  const Dfg& g = plan.graph;
  ordered_json nodes = ordered_json::array();
  for (NodeId id : g.topo_order()) {
    const Node& n = g[id];
    ordered_json operands = ordered_json::array();
    for (NodeId op : n.operands) operands.push_back(g[op].name);
    ordered_json rec;
    rec["name"] = n.name;
    rec["kind"] = std::string(kind_name(n.kind));
    rec["operands"] = std::move(operands);
    if (n.kind == NodeKind::Add) rec["negate"] = {n.negate[0], n.negate[1]};
    rec["sif"] = n.signal.fmt.str();
    rec["width"] = n.signal.width();
    rec["scale"] = n.signal.scale;
    rec["lsb"] = n.signal.lsb();
    rec["shift"] = is_format(n.kind) ? n.amount : 0;
    if (n.kind == NodeKind::Const) rec["raw"] = to_string(n.const_raw);
    rec["range"] = {to_double(n.interval.lo_value()), to_double(n.interval.hi_value())};
    rec["local_error"] = to_double(n.error.quantization);
    rec["error_bound"] = to_double(n.error.accumulated);
    nodes.push_back(std::move(rec));
  }
  j["nodes"] = std::move(nodes);

  if (ctx.stats) {
    ordered_json sim = stats_json(*ctx.stats);
    sim["vectors"] = ctx.vector_source;
    sim["bound_holds"] = ctx.stats->max <= to_double(plan.output_bound);
    j["simulation"] = std::move(sim);
  }
  return j;
}

std::string render_table(const SynthesisPlan& plan) {
  const Dfg& g = plan.graph;
  struct Row {
    std::string name, kind, sif, scale, op, error;
  };
  std::vector<Row> rows{{"Node", "Kind", "SIF", "E", "Operation", "Error"}};
  for (NodeId id : g.topo_order()) {
    const Node& n = g[id];
    rows.push_back({n.name, std::string(kind_name(n.kind)), n.signal.fmt.str(), std::to_string(n.signal.scale),
                    operation(g, n), fmt::format("{:.6f}", to_double(n.error.accumulated))});
  }
  std::array<std::size_t, 5> w{};
  for (const Row& r : rows) {
    w[0] = std::max(w[0], r.name.size());
    w[1] = std::max(w[1], r.kind.size());
    w[2] = std::max(w[2], r.sif.size());
    w[3] = std::max(w[3], r.scale.size());
    w[4] = std::max(w[4], r.op.size());
  }
  std::string out;
  for (const Row& r : rows) {
    out += fmt::format("{:<{}}  {:<{}}  {:<{}}  {:>{}}  {:<{}}  {}\n", r.name, w[0], r.kind, w[1], r.sif, w[2],
                       r.scale, w[3], r.op, w[4], r.error);
  }
  out += fmt::format("\ntopology: {}\npredicted output bound: {:.6e}\n", plan.topology.description,
                     to_double(plan.output_bound));
  return out;
}

}  // namespace fpsynt
