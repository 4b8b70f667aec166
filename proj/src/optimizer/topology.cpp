#include "fpsynt/optimizer.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>

namespace fpsynt {

namespace {

std::vector<int> use_counts(const Dfg& dfg) {
  std::vector<int> uses(dfg.size(), 0);
  for (const Node& n : dfg.nodes()) {
    for (NodeId op : n.operands) ++uses[op];
  }
  return uses;
}

// Adds that are folded into their consumer's chain.
std::vector<bool> interior_adds(const Dfg& dfg) {
  const auto uses = use_counts(dfg);
  const auto consumers = dfg.consumers();
  std::vector<bool> interior(dfg.size(), false);
  for (NodeId id = 0; id < dfg.size(); ++id) {
    if (dfg[id].kind != NodeKind::Add || uses[id] != 1) continue;
    interior[id] = dfg[consumers[id].front()].kind == NodeKind::Add;
  }
  return interior;
}

// Binary tree over the leaf positions of one chain.
struct Shape {
  int leaf = -1;
  std::shared_ptr<const Shape> left, right;

  std::string key() const {
    if (leaf >= 0) return std::to_string(leaf);
    return "(" + left->key() + "+" + right->key() + ")";
  }
};
using ShapePtr = std::shared_ptr<const Shape>;

ShapePtr make_leaf(int i) {
  auto s = std::make_shared<Shape>();
  s->leaf = i;
  return s;
}

ShapePtr make_node(ShapePtr l, ShapePtr r) {
  auto s = std::make_shared<Shape>();
  s->left = std::move(l);
  s->right = std::move(r);
  return s;
}

std::vector<ShapePtr> all_shapes(int lo, int hi) {
  if (hi - lo == 1) return {make_leaf(lo)};
  std::vector<ShapePtr> out;
  for (int mid = lo + 1; mid < hi; ++mid) {
    for (const ShapePtr& l : all_shapes(lo, mid)) {
      for (const ShapePtr& r : all_shapes(mid, hi)) out.push_back(make_node(l, r));
    }
  }
  return out;
}

ShapePtr balanced_shape(int lo, int hi) {
  if (hi - lo == 1) return make_leaf(lo);
  const int mid = lo + (hi - lo + 1) / 2;
  return make_node(balanced_shape(lo, mid), balanced_shape(mid, hi));
}

struct ChainInfo {
  AdditionChain chain;
  ShapePtr original;
};

ChainInfo flatten_chain(const Dfg& dfg, NodeId root, const std::vector<bool>& interior) {
  ChainInfo info;
  std::function<ShapePtr(NodeId, bool)> walk = [&](NodeId id, bool negative) -> ShapePtr {
    const Node& n = dfg[id];
    if (id == root || interior[id]) {
      info.chain.adds.push_back(id);
      ShapePtr l = walk(n.operands[0], negative != n.negate[0]);
      ShapePtr r = walk(n.operands[1], negative != n.negate[1]);
      return make_node(l, r);
    }
    info.chain.leaves.push_back(id);
    info.chain.negative.push_back(negative);
    return make_leaf(static_cast<int>(info.chain.leaves.size()) - 1);
  };
  info.chain.root = root;
  info.original = walk(root, false);
  std::sort(info.chain.adds.begin(), info.chain.adds.end());
  return info;
}

std::vector<ChainInfo> chain_infos(const Dfg& dfg) {
  const auto interior = interior_adds(dfg);
  std::vector<ChainInfo> out;
  for (NodeId id : dfg.topo_order()) {
    if (dfg[id].kind == NodeKind::Add && !interior[id]) out.push_back(flatten_chain(dfg, id, interior));
  }
  return out;
}

// Rebuilds the graph with each chain re-associated to the given shape.
Dfg rebuild(const Dfg& dfg, const std::vector<ChainInfo>& chains, const std::vector<ShapePtr>& shapes) {
  std::vector<int> chain_of(dfg.size(), -1);
  for (std::size_t c = 0; c < chains.size(); ++c) {
    for (NodeId add : chains[c].chain.adds) chain_of[add] = static_cast<int>(c);
  }
  Dfg out;
  std::vector<NodeId> mapped(dfg.size());

  for (NodeId id : dfg.topo_order()) {
    const Node& src = dfg[id];
    const int c = chain_of[id];
    if (c >= 0 && chains[c].chain.root != id) continue;
    if (c < 0) {
      Node n;
      n.name = src.name;
      n.kind = src.kind;
      n.negate = src.negate;
      for (NodeId op : src.operands) n.operands.push_back(mapped[op]);
      mapped[id] = out.add(std::move(n));
      continue;
    }
    const ChainInfo& info = chains[c];
    std::size_t next_name = 0;
    // Returns the new node and whether it carries the negated sum.
    std::function<std::pair<NodeId, bool>(const Shape&, bool)> build = [&](const Shape& s, bool is_root) {
      if (s.leaf >= 0) {
        return std::pair<NodeId, bool>{mapped[info.chain.leaves[s.leaf]], info.chain.negative[s.leaf]};
      }
      auto [l, ln] = build(*s.left, false);
      auto [r, rn] = build(*s.right, false);
      Node n;
      n.name = dfg[info.chain.adds[next_name++]].name;
      n.kind = NodeKind::Add;
      n.operands = {l, r};
      bool negative = false;
      if (ln && rn && !is_root) {
        negative = true;
      } else {
        n.negate = {ln, rn};
      }
      return std::pair<NodeId, bool>{out.add(std::move(n)), negative};
    };
    mapped[id] = build(*shapes[c], true).first;
  }
  return out;
}

}  // namespace

std::vector<AdditionChain> find_addition_chains(const Dfg& dfg) {
  std::vector<AdditionChain> out;
  for (ChainInfo& info : chain_infos(dfg)) out.push_back(std::move(info.chain));
  return out;
}

int accumulator_width(int width, std::size_t terms) {
  int extra = 0;
  while ((std::size_t{1} << extra) < terms) ++extra;
  return width + extra;
}

std::string describe_topology(const Dfg& dfg) {
  const auto interior = interior_adds(dfg);
  std::function<std::string(NodeId, bool)> render = [&](NodeId id, bool top) -> std::string {
    const Node& n = dfg[id];
    if (n.kind != NodeKind::Add || (!top && !interior[id])) return n.name;
    std::string s = n.negate[0] ? "-" : "";
    s += render(n.operands[0], false);
    s += n.negate[1] ? " - " : " + ";
    s += render(n.operands[1], false);
    return top ? s : "(" + s + ")";
  };
  std::string out;
  for (NodeId id : dfg.topo_order()) {
    if (dfg[id].kind != NodeKind::Add || interior[id]) continue;
    if (!out.empty()) out += "; ";
    out += dfg[id].name + " = " + render(id, true);
  }
  return out.empty() ? "(no additions)" : out;
}

std::vector<Topology> enumerate_topologies(const Dfg& dfg, int n_max, std::size_t limit) {
  const std::vector<ChainInfo> chains = chain_infos(dfg);
  // Shape options per chain; entry 0 is the original association.
  std::vector<std::vector<ShapePtr>> options;
  for (const ChainInfo& info : chains) {
    const int n = static_cast<int>(info.chain.terms());
    std::vector<ShapePtr> opts{info.original};
    std::set<std::string> seen{info.original->key()};
    const std::vector<ShapePtr> pool = n <= n_max ? all_shapes(0, n) : std::vector<ShapePtr>{balanced_shape(0, n)};
    for (const ShapePtr& s : pool) {
      if (seen.insert(s->key()).second) opts.push_back(s);
    }
    options.push_back(std::move(opts));
  }

  std::size_t total = 1;
  for (const auto& o : options) {
    total = total > limit / o.size() ? limit + 1 : total * o.size();
  }

  std::vector<std::vector<std::size_t>> picks;
  if (total <= limit) {
    std::vector<std::size_t> idx(options.size(), 0);
    for (bool carry = false; !carry;) {
      picks.push_back(idx);
      carry = true;
      for (std::size_t k = options.size(); k > 0 && carry; --k) {
        if (++idx[k - 1] < options[k - 1].size()) {
          carry = false;
        } else {
          idx[k - 1] = 0;
        }
      }
    }
  } else {
    // Too many combinations: vary one chain at a time.
    picks.push_back(std::vector<std::size_t>(options.size(), 0));
    for (std::size_t c = 0; c < options.size() && picks.size() < limit; ++c) {
      for (std::size_t s = 1; s < options[c].size() && picks.size() < limit; ++s) {
        std::vector<std::size_t> idx(options.size(), 0);
        idx[c] = s;
        picks.push_back(std::move(idx));
      }
    }
  }

  std::vector<Topology> out;
  for (const auto& idx : picks) {
    std::vector<ShapePtr> shapes;
    for (std::size_t c = 0; c < options.size(); ++c) shapes.push_back(options[c][idx[c]]);
    Topology t;
    t.dfg = rebuild(dfg, chains, shapes);
    t.description = describe_topology(t.dfg);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace fpsynt
