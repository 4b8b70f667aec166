#include "fpsynt/dfg.hpp"

#include "fpsynt/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpsynt {

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Input: return "input";
    case NodeKind::Const: return "const";
    case NodeKind::Mul: return "mul";
    case NodeKind::Add: return "add";
    case NodeKind::ShiftRight: return "shift_right";
    case NodeKind::Truncate: return "truncate";
    case NodeKind::Output: return "output";
  }
  return "?";
}

int arity(NodeKind kind) {
  switch (kind) {
    case NodeKind::Input:
    case NodeKind::Const: return 0;
    case NodeKind::Mul:
    case NodeKind::Add: return 2;
    case NodeKind::ShiftRight:
    case NodeKind::Truncate:
    case NodeKind::Output: return 1;
  }
  return 0;
}

Rational ValueInterval::magnitude() const {
  const Raw a = lo < 0 ? Raw(-lo) : lo;
  const Raw b = hi < 0 ? Raw(-hi) : hi;
  return dyadic(a > b ? a : b, lsb);
}

NodeId Dfg::add(Node node) {
  if (node.name.empty()) throw std::invalid_argument("node name must not be empty");
  if (index_.contains(node.name)) throw std::invalid_argument("duplicate node name '" + node.name + "'");
  if (static_cast<int>(node.operands.size()) != arity(node.kind)) {
    throw std::invalid_argument("node '" + node.name + "' has wrong operand count for " +
                                std::string(kind_name(node.kind)));
  }
  for (NodeId op : node.operands) {
    if (op >= nodes_.size()) throw std::invalid_argument("node '" + node.name + "' references a missing operand");
  }
  const NodeId id = nodes_.size();
  index_.emplace(node.name, id);
  if (node.kind == NodeKind::Output) outputs_.push_back(id);
  nodes_.push_back(std::move(node));
  return id;
}

void Dfg::set_operand(NodeId node, std::size_t slot, NodeId source) {
  if (source >= nodes_.size()) throw std::invalid_argument("set_operand: missing source");
  nodes_.at(node).operands.at(slot) = source;
}

std::optional<NodeId> Dfg::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<NodeId>> Dfg::consumers() const {
  std::vector<std::vector<NodeId>> result(nodes_.size());
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    for (NodeId op : nodes_[id].operands) {
      auto& list = result[op];
      if (list.empty() || list.back() != id) list.push_back(id);
    }
  }
  return result;
}

namespace {

enum class Mark { White, Grey, Black };

// Depth-first search that records the first back edge it meets.
bool find_cycle(const std::vector<Node>& nodes, NodeId id, std::vector<Mark>& mark,
                std::vector<NodeId>& stack, std::vector<std::string>& cycle) {
  mark[id] = Mark::Grey;
  stack.push_back(id);
  for (NodeId op : nodes[id].operands) {
    if (mark[op] == Mark::Grey) {
      auto it = std::find(stack.begin(), stack.end(), op);
      for (; it != stack.end(); ++it) cycle.push_back(nodes[*it].name);
      return true;
    }
    if (mark[op] == Mark::White && find_cycle(nodes, op, mark, stack, cycle)) return true;
  }
  stack.pop_back();
  mark[id] = Mark::Black;
  return false;
}

}  // namespace

std::vector<NodeId> Dfg::topo_order() const {
  const std::size_t n = nodes_.size();
  std::vector<Mark> mark(n, Mark::White);
  std::vector<NodeId> stack;
  std::vector<std::string> cycle;
  for (NodeId id = 0; id < n; ++id) {
    if (mark[id] == Mark::White && find_cycle(nodes_, id, mark, stack, cycle)) {
      // Operand edges point backwards in dataflow; report in dataflow order.
      std::reverse(cycle.begin(), cycle.end());
      throw GraphCycleError(std::move(cycle));
    }
  }

  // Longest-path levels by relaxation over a DFS post-order.
  std::vector<int> level(n, -1);
  std::vector<std::pair<NodeId, std::size_t>> work;
  for (NodeId root = 0; root < n; ++root) {
    if (level[root] >= 0) continue;
    work.emplace_back(root, 0);
    while (!work.empty()) {
      auto& [id, next] = work.back();
      const auto& ops = nodes_[id].operands;
      if (next < ops.size()) {
        NodeId op = ops[next++];
        if (level[op] < 0) work.emplace_back(op, 0);
        continue;
      }
      int lv = 0;
      for (NodeId op : ops) lv = std::max(lv, level[op] + 1);
      level[id] = lv;
      work.pop_back();
    }
  }

  std::vector<NodeId> order(n);
  for (NodeId id = 0; id < n; ++id) order[id] = id;
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return level[a] < level[b]; });
  return order;
}

std::vector<NodeId> topo_order(const Dfg& dfg) { return dfg.topo_order(); }

}  // namespace fpsynt
