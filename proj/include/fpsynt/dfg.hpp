#pragma once

#include "fpsynt/numeric.hpp"
#include "fpsynt/sif.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fpsynt {

using NodeId = std::size_t;

enum class NodeKind { Input, Const, Mul, Add, ShiftRight, Truncate, Output };

std::string_view kind_name(NodeKind kind);

/// Number of operands a node of this kind takes.
int arity(NodeKind kind);

/// True for the formatting operations the analysis inserts.
constexpr bool is_format(NodeKind kind) {
  return kind == NodeKind::ShiftRight || kind == NodeKind::Truncate;
}

/// Closed range of a node's actual (fixed-point) value, held exactly as raw
/// bounds on the grid 2^lsb.
struct ValueInterval {
  Raw lo = 0;
  Raw hi = 0;
  int lsb = 0;

  Rational lo_value() const { return dyadic(lo, lsb); }
  Rational hi_value() const { return dyadic(hi, lsb); }
  /// max(|lo|, |hi|)
  Rational magnitude() const;
};

struct NodeErrorBound {
  /// Local error introduced at this node: constant quantization or the
  /// bits discarded by a formatting operation.
  Rational quantization = 0;
  /// Worst-case absolute semantic error relative to exact evaluation.
  Rational accumulated = 0;
};

struct Node {
  std::string name;
  NodeKind kind = NodeKind::Input;
  std::vector<NodeId> operands;
  /// Add only: operand is subtracted instead of added.
  std::array<bool, 2> negate{false, false};
  /// ShiftRight / Truncate: number of low bits discarded.
  int amount = 0;

  // Filled in by analysis; default-valued on a freshly parsed graph.
  ScaledSignal signal;
  ValueInterval interval;
  NodeErrorBound error;
  /// Const only: the quantized raw word.
  Raw const_raw = 0;
};

/// Directed acyclic dataflow graph. Nodes are stored in insertion order;
/// operand links refer to earlier or later nodes by index.
class Dfg {
 public:
  /// Appends a node. Throws std::invalid_argument on duplicate names,
  /// wrong arity or dangling operand ids.
  NodeId add(Node node);

  /// Rewires one operand slot; the only way to introduce a back edge.
  void set_operand(NodeId node, std::size_t slot, NodeId source);

  const Node& node(NodeId id) const { return nodes_.at(id); }
  Node& node(NodeId id) { return nodes_.at(id); }
  const Node& operator[](NodeId id) const { return nodes_[id]; }

  std::optional<NodeId> find(std::string_view name) const;
  std::span<const Node> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Output nodes in declaration order.
  const std::vector<NodeId>& outputs() const { return outputs_; }

  /// consumers()[n] lists every node that reads n, in index order.
  std::vector<std::vector<NodeId>> consumers() const;

  /// Deterministic topological order: nodes sorted by ASAP level (longest
  /// operand path from a source), ties broken by insertion order. Throws
  /// GraphCycleError naming the nodes of one cycle.
  std::vector<NodeId> topo_order() const;

 private:
  std::vector<Node> nodes_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<NodeId> outputs_;
};

std::vector<NodeId> topo_order(const Dfg& dfg);

}  // namespace fpsynt
