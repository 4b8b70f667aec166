#include "fpsynt/error.hpp"
#include "fpsynt/optimizer.hpp"

#include <algorithm>
#include <optional>

namespace fpsynt {

std::size_t SynthesisPlan::format_node_count() const {
  return static_cast<std::size_t>(
      std::count_if(graph.nodes().begin(), graph.nodes().end(), [](const Node& n) { return is_format(n.kind); }));
}

std::vector<FormatChoice> candidate_choices(const Node& node, AddMode mode, int k_max) {
  std::vector<FormatChoice> out;
  if (node.kind == NodeKind::Mul) {
    for (int d = 0; d <= k_max; ++d) out.push_back(FormatChoice{d, {0, 0}});
  } else if (node.kind == NodeKind::Add && mode == AddMode::Pairwise) {
    for (int ka = 0; ka <= k_max; ++ka) {
      for (int kb = 0; kb <= k_max; ++kb) out.push_back(FormatChoice{0, {ka, kb}});
    }
  } else {
    out.push_back(FormatChoice{});
  }
  return out;
}

namespace {

class Search {
 public:
  Search(const Dfg& dfg, const Bindings& bindings, const OptimizerConfig& config, const SearchOptions& options)
      : dfg_(dfg), bindings_(bindings), config_(config), options_(options), order_(dfg.topo_order()) {
    states_.resize(dfg.size());
    chosen_ = options.base.choices;
    for (NodeId id : order_) {
      candidates_.push_back(candidate_choices(dfg[id], options.base.add_modes[id], config.k_max));
    }
  }

  void run() { descend(0); }

  const std::optional<Rational>& best() const { return best_; }
  const std::vector<FormatChoice>& best_choices() const { return best_choices_; }
  const SearchStats& stats() const { return stats_; }

 private:
  bool descend(std::size_t depth) {
    ++stats_.visited;
    if (depth == order_.size()) {
      ++stats_.leaves;
      Rational cost = 0;
      for (NodeId out : dfg_.outputs()) cost = std::max(cost, states_[out]->error);
      if (!best_ || cost < *best_) {
        best_ = cost;
        best_choices_ = chosen_;
      }
      return !options_.minimize;
    }
    const NodeId id = order_[depth];
    const Node& node = dfg_[id];
    NodeContext ctx{config_.analysis(), options_.base.add_modes[id], options_.base.accumulator_widths[id], &bindings_};
    std::vector<const SignalState*> ops;
    for (NodeId op : node.operands) ops.push_back(&*states_[op]);

    for (const FormatChoice& choice : candidates_[depth]) {
      try {
        states_[id] = evaluate_node(node, ops, choice, ctx).out;
      } catch (const CannotFitError&) {
        ++stats_.infeasible;
        continue;
      }
      chosen_[id] = choice;
      if (options_.prune && best_ && lower_bound(depth + 1) >= *best_) {
        ++stats_.pruned;
        continue;
      }
      if (descend(depth + 1)) {
        states_[id].reset();
        return true;
      }
    }
    states_[id].reset();
    return false;
  }

  // Admissible bound on the final cost given the nodes assigned so far.
  // Unassigned nodes contribute only what their operands force: every term
  // of the error propagation is nonnegative, so dropping the local losses
  // and using 0 for unknown magnitudes never overestimates.
  Rational lower_bound(std::size_t assigned) const {
    std::vector<Rational> lb(dfg_.size());
    std::vector<Rational> mag(dfg_.size());
    for (std::size_t d = 0; d < order_.size(); ++d) {
      const NodeId id = order_[d];
      const Node& n = dfg_[id];
      if (d < assigned) {
        lb[id] = states_[id]->error;
        mag[id] = states_[id]->interval.magnitude();
        continue;
      }
      switch (n.kind) {
        case NodeKind::Mul: {
          const NodeId a = n.operands[0], b = n.operands[1];
          lb[id] = mag[a] * lb[b] + mag[b] * lb[a] + lb[a] * lb[b];
          break;
        }
        case NodeKind::Add:
          lb[id] = lb[n.operands[0]] + lb[n.operands[1]];
          break;
        case NodeKind::Output:
          lb[id] = lb[n.operands[0]];
          break;
        default:
          break;
      }
    }
    Rational worst = 0;
    for (NodeId out : dfg_.outputs()) worst = std::max(worst, lb[out]);
    return worst;
  }

  const Dfg& dfg_;
  const Bindings& bindings_;
  const OptimizerConfig& config_;
  const SearchOptions& options_;
  std::vector<NodeId> order_;
  std::vector<std::vector<FormatChoice>> candidates_;
  std::vector<std::optional<SignalState>> states_;
  std::vector<FormatChoice> chosen_;
  std::optional<Rational> best_;
  std::vector<FormatChoice> best_choices_;
  SearchStats stats_;
};

}  // namespace

SynthesisPlan combinatorial_search(const Topology& topology, const Bindings& bindings, const OptimizerConfig& config,
                                   const SearchOptions& options) {
  SearchOptions opts = options;
  if (opts.base.choices.size() != topology.dfg.size()) opts.base = FormatAssignment::defaults(topology.dfg.size());

  Search search(topology.dfg, bindings, config, opts);
  search.run();
  if (!search.best()) {
    throw CannotFitError("no overflow-free format assignment fits a " + std::to_string(config.width) +
                         "-bit datapath");
  }
  SynthesisPlan plan;
  plan.topology = topology;
  plan.assignment = opts.base;
  plan.assignment.choices = search.best_choices();
  plan.graph = annotate(topology.dfg, bindings, plan.assignment, config.analysis());
  plan.output_bound = output_error_bound(plan.graph);
  plan.stats = search.stats();
  plan.width = config.width;
  plan.quantize = config.quantize;
  return plan;
}

}  // namespace fpsynt
