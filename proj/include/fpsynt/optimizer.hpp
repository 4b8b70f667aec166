#pragma once

#include "fpsynt/analysis.hpp"
#include "fpsynt/dfg.hpp"
#include "fpsynt/frontend.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fpsynt {

struct OptimizerConfig {
  int width = 16;
  QuantizeMode quantize = QuantizeMode::Round;
  /// Largest per-operand pre-scale shift and extra product truncation tried.
  int k_max = 3;
  /// Chains with more terms get only the balanced shape plus the original.
  int n_max_topologies = 6;
  bool enable_combinatorial = true;
  bool enable_chain_alloc = true;
  bool enable_topology_opt = true;
  int accumulator_width_limit = 64;
  /// Upper bound on the number of whole-graph topologies searched.
  std::size_t max_topologies = 1024;

  AnalysisConfig analysis() const { return AnalysisConfig{width, quantize}; }
};

/// A maximal run of associative additions. Interior adds feed exactly one
/// consumer, which is the next add of the same chain.
struct AdditionChain {
  NodeId root = 0;
  /// Every Add of the chain, in index order (root last).
  std::vector<NodeId> adds;
  /// Terms in left-to-right order, with their signs in the flattened sum.
  std::vector<NodeId> leaves;
  std::vector<bool> negative;

  std::size_t terms() const { return leaves.size(); }
};

std::vector<AdditionChain> find_addition_chains(const Dfg& dfg);

/// W + ceil(log2(terms)).
int accumulator_width(int width, std::size_t terms);

struct SearchStats {
  std::uint64_t visited = 0;
  std::uint64_t leaves = 0;
  std::uint64_t pruned = 0;
  std::uint64_t infeasible = 0;
};

struct SearchOptions {
  /// Branch-and-bound pruning; off gives the exhaustive oracle.
  bool prune = true;
  /// Off: return the first feasible leaf (smallest choice vector).
  bool minimize = true;
  /// Base assignment carrying add modes and accumulator widths.
  FormatAssignment base;
};

struct Topology {
  Dfg dfg;
  std::string description;
};

struct SynthesisPlan {
  /// Annotated graph with inserted ShiftRight/Truncate nodes.
  Dfg graph;
  Topology topology;
  FormatAssignment assignment;
  std::vector<AdditionChain> chains;
  Rational output_bound = 0;
  SearchStats stats;
  std::vector<std::string> warnings;
  int width = 16;
  QuantizeMode quantize = QuantizeMode::Round;

  std::size_t format_node_count() const;
};

/// Candidate formatting choices for one node, in lexicographic order.
std::vector<FormatChoice> candidate_choices(const Node& node, AddMode mode, int k_max);

/// Depth-first branch-and-bound over one FormatChoice per node in
/// topological order, minimizing the worst output error bound. Ties go to
/// the lexicographically smallest choice vector. Throws CannotFitError
/// when no leaf is feasible.
SynthesisPlan combinatorial_search(const Topology& topology, const Bindings& bindings,
                                   const OptimizerConfig& config, const SearchOptions& options);

/// Every re-association of the graph's addition chains: all Catalan shapes
/// for chains of at most n_max terms, balanced plus original otherwise.
/// The first entry is always the graph as given.
std::vector<Topology> enumerate_topologies(const Dfg& dfg, int n_max, std::size_t limit = 1024);

/// Shape of a graph's addition chains, e.g. "y: (t0 + t1) + (t2 + t3)".
std::string describe_topology(const Dfg& dfg);

/// Searches one topology, with wide-accumulator chains when enabled. Falls
/// back to pairwise pre-scaling (with a warning) when an accumulator would
/// exceed accumulator_width_limit or does not fit.
SynthesisPlan chain_allocate(const Topology& topology, const Bindings& bindings, const OptimizerConfig& config);

/// Pairwise pre-scaled plan for one topology (no chain accumulators).
SynthesisPlan pairwise_plan(const Topology& topology, const Bindings& bindings, const OptimizerConfig& config);

/// Argmin over enumerated topologies by bound, then fewest inserted format
/// nodes, then description.
SynthesisPlan topological_optimize(const Dfg& dfg, const Bindings& bindings, const OptimizerConfig& config);

/// The full optimization pipeline as configured.
SynthesisPlan optimize(const Dfg& dfg, const Bindings& bindings, const OptimizerConfig& config);

}  // namespace fpsynt
