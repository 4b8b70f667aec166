#include "fpsynt/error.hpp"
#include "fpsynt/optimizer.hpp"
#include "fpsynt/simulator.hpp"

#include "../support/test_support.hpp"

#include <gtest/gtest.h>

#include <optional>
#include <set>

using namespace fpsynt;

namespace {

Topology as_given(const Dfg& dfg) { return Topology{dfg, describe_topology(dfg)}; }

ParsedSpec chain_spec(int terms) {
  std::string src;
  std::string expr;
  for (int k = 0; k < terms; ++k) {
    src += "input a" + std::to_string(k) + " : sif(1/0/7);\n";
    expr += (k ? " + a" : "a") + std::to_string(k);
  }
  return parse_spec(src + "output s = " + expr + ";\n");
}

Rational observed_max(const SynthesisPlan& plan, const ParsedSpec& spec, const std::vector<TestVector>& vectors) {
  Rational worst = 0;
  for (const TestVector& v : vectors) {
    const FixedResult fixed = run_fixed(plan.graph, spec.bindings, v);
    const auto exact = run_reference_exact(spec.bindings, spec.dfg, v);
    for (std::size_t k = 0; k < exact.size(); ++k) worst = std::max(worst, Rational(abs(fixed.values[k] - exact[k])));
  }
  return worst;
}

}  // namespace

TEST(Search, CandidateChoices) {
  Node mul;
  mul.kind = NodeKind::Mul;
  Node add;
  add.kind = NodeKind::Add;
  EXPECT_EQ(candidate_choices(mul, AddMode::Pairwise, 2).size(), 3u);
  EXPECT_EQ(candidate_choices(add, AddMode::Pairwise, 2).size(), 9u);
  EXPECT_EQ(candidate_choices(add, AddMode::ChainInterior, 2).size(), 1u);
  const auto adds = candidate_choices(add, AddMode::Pairwise, 1);
  EXPECT_EQ(adds.front(), (FormatChoice{0, {0, 0}}));
  EXPECT_EQ(adds[1], (FormatChoice{0, {0, 1}}));
}

TEST(Search, MatchesBruteForceOnTwoTapFilter) {
  const ParsedSpec spec = test::load_spec("fir2_w8.fps");
  OptimizerConfig config = test::config_for(8);
  config.k_max = 2;
  const test::ExhaustiveResult oracle = test::exhaustive_minimum(spec.dfg, spec.bindings, config);
  ASSERT_TRUE(oracle.best);
  const SynthesisPlan plan = pairwise_plan(as_given(spec.dfg), spec.bindings, config);
  EXPECT_EQ(plan.output_bound, *oracle.best);
  EXPECT_EQ(plan.assignment.choices, oracle.choices);
  EXPECT_LE(observed_max(plan, spec, test::exhaustive_vectors(spec.bindings)), plan.output_bound);
}

TEST(Search, MatchesBruteForceOnEveryTwoOperationGraph) {
  OptimizerConfig config = test::config_for(8);
  config.k_max = 2;
  for (const std::string& body : test::two_operation_specs()) {
    const ParsedSpec spec = parse_spec(body);
    const test::ExhaustiveResult oracle = test::exhaustive_minimum(spec.dfg, spec.bindings, config);
    if (!oracle.best) {
      EXPECT_THROW(pairwise_plan(as_given(spec.dfg), spec.bindings, config), CannotFitError) << body;
      continue;
    }
    const SynthesisPlan plan = pairwise_plan(as_given(spec.dfg), spec.bindings, config);
    EXPECT_EQ(plan.output_bound, *oracle.best) << body;
    EXPECT_EQ(plan.assignment.choices, oracle.choices) << body;
  }
}

TEST(Search, PruningDoesNotChangeTheOptimum) {
  for (const char* file : {"fir4.fps", "fir2_w8.fps", "sum8.fps"}) {
    const bool long_chain = std::string(file) == "sum8.fps";
    const ParsedSpec spec = test::load_spec(file);
    OptimizerConfig config = test::config_for(16);
    config.k_max = long_chain ? 1 : 2;
    SearchOptions pruned;
    SearchOptions full;
    full.prune = false;
    const SynthesisPlan a = combinatorial_search(as_given(spec.dfg), spec.bindings, config, pruned);
    const SynthesisPlan b = combinatorial_search(as_given(spec.dfg), spec.bindings, config, full);
    EXPECT_EQ(a.output_bound, b.output_bound) << file;
    EXPECT_EQ(a.assignment.choices, b.assignment.choices) << file;
    EXPECT_EQ(b.stats.pruned, 0u);
    EXPECT_LE(a.stats.visited, b.stats.visited);
  }
}

TEST(Search, FirstFeasibleWithoutMinimizing) {
  const ParsedSpec spec = test::load_spec("fir4.fps");
  OptimizerConfig config = test::config_for(16);
  SearchOptions first;
  first.minimize = false;
  const SynthesisPlan quick = combinatorial_search(as_given(spec.dfg), spec.bindings, config, first);
  const SynthesisPlan best = combinatorial_search(as_given(spec.dfg), spec.bindings, config, {});
  EXPECT_EQ(quick.stats.leaves, 1u);
  EXPECT_GE(quick.output_bound, best.output_bound);
}

TEST(Search, InfeasibleThrows) {
  const ParsedSpec wide = parse_spec("input a : sif(1/0/15);\noutput y = a + a;");
  EXPECT_THROW(pairwise_plan(as_given(wide.dfg), wide.bindings, test::config_for(8)), CannotFitError);
  const ParsedSpec big = parse_spec("input a : sif(1/0/7);\nconst k = 200;\noutput y = k * a;");
  EXPECT_THROW(pairwise_plan(as_given(big.dfg), big.bindings, test::config_for(8)), CannotFitError);
}

TEST(Optimize, PassthroughIsIdentity) {
  const ParsedSpec spec = test::load_spec("passthrough.fps");
  const SynthesisPlan plan = optimize(spec.dfg, spec.bindings, test::config_for(16));
  EXPECT_EQ(plan.output_bound, 0);
  EXPECT_EQ(plan.format_node_count(), 0u);
  EXPECT_EQ(plan.graph.size(), 2u);
  EXPECT_EQ(plan.topology.description, "(no additions)");
}

TEST(Optimize, FirFourBoundAgainstSimulation) {
  const ParsedSpec spec = test::load_spec("fir4.fps");
  const SynthesisPlan plan = optimize(spec.dfg, spec.bindings, test::config_for(16));
  const ErrorStats stats = compare(plan.graph, spec.bindings, spec.dfg, generate_vectors(spec.bindings, 90, 1));
  EXPECT_EQ(stats.count, 93u);
  EXPECT_GE(to_double(plan.output_bound), stats.max);
  EXPECT_LE(to_double(plan.output_bound), 4 * 1.2783e-4);
  EXPECT_NEAR(to_double(plan.output_bound), 1.586877e-4, 1e-9);
}

TEST(Topology, CatalanCounts) {
  const std::vector<std::size_t> catalan{1, 1, 2, 5, 14, 42};
  for (int terms = 2; terms <= 6; ++terms) {
    const ParsedSpec spec = chain_spec(terms);
    const auto topologies = enumerate_topologies(spec.dfg, 6);
    EXPECT_EQ(topologies.size(), catalan[terms - 1]) << terms;
    std::set<std::string> names;
    for (const Topology& t : topologies) names.insert(t.description);
    EXPECT_EQ(names.size(), topologies.size());
    EXPECT_EQ(topologies.front().description, describe_topology(spec.dfg));
  }
}

TEST(Topology, LongChainsGetBalancedPlusOriginal) {
  const ParsedSpec spec = chain_spec(8);
  const auto topologies = enumerate_topologies(spec.dfg, 6);
  ASSERT_EQ(topologies.size(), 2u);
  EXPECT_EQ(topologies[1].description, "t6 = ((a0 + a1) + (a2 + a3)) + ((a4 + a5) + (a6 + a7))");
}

TEST(Topology, FirFourIncludesBalancedTree) {
  const ParsedSpec spec = test::load_spec("fir4.fps");
  const auto topologies = enumerate_topologies(spec.dfg, 6);
  EXPECT_EQ(topologies.size(), 5u);
  EXPECT_EQ(topologies.front().description, "t6 = ((t0 + t1) + t2) + t3");
  bool balanced = false;
  for (const Topology& t : topologies) balanced |= t.description == "t6 = (t0 + t1) + (t2 + t3)";
  EXPECT_TRUE(balanced);
}

TEST(Topology, ReassociationPreservesValues) {
  const ParsedSpec spec = parse_spec("input a : sif(1/0/7); input b : sif(1/0/7); input c : sif(1/0/7);"
                                     " input d : sif(1/0/7);\noutput y = a - b + c - d;");
  const auto vectors = generate_vectors(spec.bindings, 50, 3);
  for (const Topology& t : enumerate_topologies(spec.dfg, 6)) {
    for (const TestVector& v : vectors) {
      ASSERT_EQ(run_reference_exact(spec.bindings, t.dfg, v), run_reference_exact(spec.bindings, spec.dfg, v))
          << t.description;
    }
  }
}

TEST(Topology, SymmetricTwoTermHasOneShape) {
  const ParsedSpec spec = chain_spec(2);
  const auto topologies = enumerate_topologies(spec.dfg, 6);
  ASSERT_EQ(topologies.size(), 1u);
  const SynthesisPlan plan = optimize(spec.dfg, spec.bindings, test::config_for(16));
  EXPECT_EQ(plan.topology.description, topologies.front().description);
  EXPECT_EQ(plan.output_bound, 0);
}

TEST(Topology, ArgminIsNoWorseThanAnyCandidate) {
  const ParsedSpec spec = test::load_spec("fir4.fps");
  OptimizerConfig config = test::config_for(16);
  const SynthesisPlan best = topological_optimize(spec.dfg, spec.bindings, config);
  bool found = false;
  for (const Topology& t : enumerate_topologies(spec.dfg, config.n_max_topologies)) {
    const SynthesisPlan p = chain_allocate(t, spec.bindings, config);
    EXPECT_LE(best.output_bound, p.output_bound) << t.description;
    found |= t.description == best.topology.description;
  }
  EXPECT_TRUE(found);
}

TEST(Topology, LargeAndTinyTermsAtEightBits) {
  const ParsedSpec spec = parse_spec(test::fir_source({"0.9", "0.01", "0.9", "0.01"}, {1, 0, 3}));
  OptimizerConfig config = test::config_for(8);
  config.enable_chain_alloc = false;
  const SynthesisPlan original = pairwise_plan(as_given(spec.dfg), spec.bindings, config);
  const SynthesisPlan best = optimize(spec.dfg, spec.bindings, config);
  EXPECT_LE(best.output_bound, original.output_bound);
  const auto vectors = test::exhaustive_vectors(spec.bindings);
  ASSERT_EQ(vectors.size(), 65536u);
  EXPECT_LE(observed_max(best, spec, vectors), best.output_bound);
}

TEST(Chain, AccumulatorWidth) {
  EXPECT_EQ(accumulator_width(16, 8), 19);
  EXPECT_EQ(accumulator_width(16, 4), 18);
  EXPECT_EQ(accumulator_width(16, 5), 19);
  EXPECT_EQ(accumulator_width(16, 2), 17);
  EXPECT_EQ(accumulator_width(8, 1), 8);
}

TEST(Chain, FindsMaximalChains) {
  const ParsedSpec spec = test::load_spec("sum8.fps");
  const auto chains = find_addition_chains(spec.dfg);
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains[0].terms(), 8u);
  EXPECT_EQ(chains[0].adds.size(), 7u);

  // A shared intermediate sum splits the chain.
  const ParsedSpec shared = parse_spec("input a : sif(1/0/7); input b : sif(1/0/7); input c : sif(1/0/7);\n"
                                       "output u = a + b;\noutput v = u + c;");
  EXPECT_EQ(find_addition_chains(shared.dfg).size(), 2u);
}

TEST(Chain, EightTermChainBeatsPairwise) {
  const ParsedSpec spec = test::load_spec("sum8.fps");
  OptimizerConfig config = test::config_for(16);
  config.k_max = 1;
  const SynthesisPlan chain = chain_allocate(as_given(spec.dfg), spec.bindings, config);
  const SynthesisPlan pair = pairwise_plan(as_given(spec.dfg), spec.bindings, config);
  ASSERT_EQ(chain.chains.size(), 1u);
  EXPECT_EQ(accumulator_width(16, chain.chains[0].terms()), 19);
  EXPECT_LE(chain.output_bound, pair.output_bound);
  // Only the final truncation loses bits: 3 bits at 2^-15.
  EXPECT_EQ(chain.output_bound, 7 * pow2_rational(-15));
  EXPECT_TRUE(chain.warnings.empty());
}

TEST(Chain, FirFourChainNoWorseThanPairwise) {
  const ParsedSpec spec = test::load_spec("fir4.fps");
  for (int width : {16, 24}) {
    const OptimizerConfig config = test::config_for(width);
    const SynthesisPlan chain = chain_allocate(as_given(spec.dfg), spec.bindings, config);
    const SynthesisPlan pair = pairwise_plan(as_given(spec.dfg), spec.bindings, config);
    EXPECT_LE(chain.output_bound, pair.output_bound) << width;
  }
}

TEST(Chain, SumAtEightBitsMatchesScaleModel) {
  const ParsedSpec spec = chain_spec(8);
  const SynthesisPlan chain = chain_allocate(as_given(spec.dfg), spec.bindings, test::config_for(8));
  // Exact 11-bit accumulation, then 3 bits dropped at 2^-7.
  EXPECT_EQ(chain.output_bound, 7 * pow2_rational(-7));
  const Node& s = chain.graph[*chain.graph.find("s")];
  EXPECT_EQ(s.signal.fmt, (SifFormat{1, 3, 4}));
  EXPECT_EQ(s.signal.scale, 0);
}

TEST(Chain, FallsBackWithWarningWhenTooWide) {
  const ParsedSpec spec = test::load_spec("sum8.fps");
  OptimizerConfig config = test::config_for(16);
  config.accumulator_width_limit = 18;
  config.k_max = 1;
  const SynthesisPlan plan = chain_allocate(as_given(spec.dfg), spec.bindings, config);
  EXPECT_TRUE(plan.chains.empty());
  ASSERT_EQ(plan.warnings.size(), 1u);
  EXPECT_NE(plan.warnings[0].find("19 bits"), std::string::npos);
  EXPECT_EQ(plan.output_bound, pairwise_plan(as_given(spec.dfg), spec.bindings, config).output_bound);
}

TEST(Optimize, Deterministic) {
  const ParsedSpec spec = test::load_spec("fir4.fps");
  const OptimizerConfig config = test::config_for(16);
  const SynthesisPlan a = optimize(spec.dfg, spec.bindings, config);
  for (int run = 0; run < 3; ++run) {
    const SynthesisPlan b = optimize(spec.dfg, spec.bindings, config);
    EXPECT_EQ(a.topology.description, b.topology.description);
    EXPECT_EQ(a.assignment.choices, b.assignment.choices);
    EXPECT_EQ(a.output_bound, b.output_bound);
    ASSERT_EQ(a.graph.size(), b.graph.size());
    for (NodeId id = 0; id < a.graph.size(); ++id) EXPECT_EQ(a.graph[id].name, b.graph[id].name);
  }
}

TEST(Optimize, DisabledPassesKeepTheSourceShape) {
  const ParsedSpec spec = test::load_spec("fir4.fps");
  OptimizerConfig config = test::config_for(16);
  config.enable_topology_opt = false;
  config.enable_chain_alloc = false;
  config.enable_combinatorial = false;
  const SynthesisPlan plan = optimize(spec.dfg, spec.bindings, config);
  EXPECT_EQ(plan.topology.description, describe_topology(spec.dfg));
  EXPECT_TRUE(plan.chains.empty());
  EXPECT_GE(plan.output_bound, optimize(spec.dfg, spec.bindings, test::config_for(16)).output_bound);
}
