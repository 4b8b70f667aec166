#include "fpsynt/error.hpp"
#include "fpsynt/optimizer.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

namespace fpsynt {

namespace {

SearchOptions search_options(const OptimizerConfig& config, FormatAssignment base) {
  SearchOptions opts;
  opts.prune = true;
  opts.minimize = config.enable_combinatorial;
  opts.base = std::move(base);
  return opts;
}

SynthesisPlan plan_for(const Topology& topology, const Bindings& bindings, const OptimizerConfig& config) {
  return config.enable_chain_alloc ? chain_allocate(topology, bindings, config)
                                   : pairwise_plan(topology, bindings, config);
}

bool better(const SynthesisPlan& a, const SynthesisPlan& b) {
  if (a.output_bound != b.output_bound) return a.output_bound < b.output_bound;
  if (a.format_node_count() != b.format_node_count()) return a.format_node_count() < b.format_node_count();
  return a.topology.description < b.topology.description;
}

}  // namespace

SynthesisPlan pairwise_plan(const Topology& topology, const Bindings& bindings, const OptimizerConfig& config) {
  return combinatorial_search(topology, bindings, config,
                              search_options(config, FormatAssignment::defaults(topology.dfg.size())));
}

SynthesisPlan chain_allocate(const Topology& topology, const Bindings& bindings, const OptimizerConfig& config) {
  const std::vector<AdditionChain> chains = find_addition_chains(topology.dfg);
  FormatAssignment base = FormatAssignment::defaults(topology.dfg.size());
  std::vector<AdditionChain> allocated;
  std::vector<std::string> warnings;
  for (const AdditionChain& chain : chains) {
    const int acc = accumulator_width(config.width, chain.terms());
    const std::string& root = topology.dfg[chain.root].name;
    if (acc > config.accumulator_width_limit) {
      warnings.push_back("chain " + root + ": accumulator of " + std::to_string(acc) + " bits exceeds the " +
                         std::to_string(config.accumulator_width_limit) + "-bit limit; using pairwise pre-scaling");
      continue;
    }
    for (NodeId add : chain.adds) {
      base.add_modes[add] = add == chain.root ? AddMode::ChainRoot : AddMode::ChainInterior;
      base.accumulator_widths[add] = acc;
    }
    allocated.push_back(chain);
  }

  SynthesisPlan plan;
  try {
    plan = combinatorial_search(topology, bindings, config, search_options(config, std::move(base)));
    plan.chains = std::move(allocated);
  } catch (const CannotFitError& e) {
    if (allocated.empty()) throw;
    warnings.push_back(std::string("wide accumulators do not fit (") + e.what() + "); using pairwise pre-scaling");
    plan = pairwise_plan(topology, bindings, config);
  }
  plan.warnings.insert(plan.warnings.begin(), warnings.begin(), warnings.end());
  return plan;
}

SynthesisPlan topological_optimize(const Dfg& dfg, const Bindings& bindings, const OptimizerConfig& config) {
  const std::vector<Topology> topologies =
      enumerate_topologies(dfg, config.n_max_topologies, config.max_topologies);
  spdlog::debug("searching {} topologies", topologies.size());

  std::vector<std::optional<SynthesisPlan>> plans(topologies.size());
  std::vector<std::exception_ptr> errors(topologies.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < topologies.size(); i = next++) {
      try {
        plans[i] = plan_for(topologies[i], bindings, config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), topologies.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  // Anything other than cannot-fit is a genuine failure.
  for (const auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const CannotFitError&) {
    }
  }
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (plans[i] && (!best || better(*plans[i], *plans[*best]))) best = i;
  }
  if (!best) std::rethrow_exception(errors.front());
  spdlog::debug("chose topology {}", plans[*best]->topology.description);
  return std::move(*plans[*best]);
}

SynthesisPlan optimize(const Dfg& dfg, const Bindings& bindings, const OptimizerConfig& config) {
  if (config.enable_topology_opt) return topological_optimize(dfg, bindings, config);
  return plan_for(Topology{dfg, describe_topology(dfg)}, bindings, config);
}

}  // namespace fpsynt
