// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "fpsynt/codegen.hpp"
#include "fpsynt/error.hpp"
#include "fpsynt/frontend.hpp"
#include "fpsynt/optimizer.hpp"
#include "fpsynt/simulator.hpp"

#include "c_interp.hpp"
#include "test_support.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace fpsynt;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Built {
  ParsedSpec spec;
  SynthesisPlan plan;
};

Built build(const ParsedSpec& spec, const OptimizerConfig& config) {
  return Built{spec, optimize(spec.dfg, spec.bindings, config)};
}

Verdict format_widths() {
  const bool ok = sif_width({1, 0, 15}) == 16 && sif_width({2, 3, 8}) == 13 && sif_width({6, 3, 0}) == 9;
  return {ok, fmt::format("(1/0/15)={} (2/3/8)={} (6/3/0)={}", sif_width({1, 0, 15}), sif_width({2, 3, 8}),
                          sif_width({6, 3, 0}))};
}

Verdict worked_decode() {
  const Rational v = decode_bits(0b00111101, {2, 2, 4});
  return {v == Rational(61, 16), "decode(0b00111101, (2/2/4)) = " + v.str()};
}

Verdict coefficient_literals() {
  const Raw a = quantize_const(parse_decimal("0.15"), 25);
  const Raw b = quantize_const(parse_decimal("0.05"), 28);
  return {a == Raw(5033165) && b == Raw(13421773), "0.15@25=" + to_string(a) + " 0.05@28=" + to_string(b)};
}

Verdict fir4_accuracy() {
  const auto start = Clock::now();
  const Built b = build(test::load_spec("fir4.fps"), test::config_for(16));
  const auto vectors = generate_vectors(b.spec.bindings, 90, 1);
  const ErrorStats s = compare(b.plan.graph, b.spec.bindings, b.spec.dfg, vectors);
  const double t = seconds_since(start);
  const bool ok = s.count == 93 && s.max <= 2.6e-4 && s.mean >= 1.3e-5 && s.mean <= 2.0e-4 && t < 1.0;
  return {ok, fmt::format("count={} max={:.4e} mean={:.4e} median={:.4e} ({:.2f}s)", s.count, s.max, s.mean,
                          s.median, t)};
}

// Largest |fixed - exact| over the vectors, in exact arithmetic.
Rational worst_exact(const Built& b, const std::vector<TestVector>& vectors) {
  Rational worst = 0;
  for (const TestVector& v : vectors) {
    const FixedResult fixed = run_fixed(b.plan.graph, b.spec.bindings, v);
    const auto exact = run_reference_exact(b.spec.bindings, b.spec.dfg, v);
    for (std::size_t k = 0; k < exact.size(); ++k) worst = std::max(worst, Rational(abs(fixed.values[k] - exact[k])));
  }
  return worst;
}

Verdict bound_soundness() {
  const auto start = Clock::now();
  const Built fir4 = build(test::load_spec("fir4.fps"), test::config_for(16));
  const auto random = generate_vectors(fir4.spec.bindings, 10000, 2024);
  const Rational fir4_worst = worst_exact(fir4, random);
  const double fir4_double = compare(fir4.plan.graph, fir4.spec.bindings, fir4.spec.dfg, random).max;

  const Built tap2 = build(test::load_spec("fir2_w8.fps"), test::config_for(8));
  const auto all = test::exhaustive_vectors(tap2.spec.bindings);
  const Rational tap2_worst = worst_exact(tap2, all);
  const double tap2_double = compare(tap2.plan.graph, tap2.spec.bindings, tap2.spec.dfg, all).max;
  const double t = seconds_since(start);

  const bool ok = fir4_worst <= fir4.plan.output_bound && fir4_double <= to_double(fir4.plan.output_bound) &&
                  tap2_worst <= tap2.plan.output_bound && tap2_double <= to_double(tap2.plan.output_bound) &&
                  t < 30.0;
  return {ok, fmt::format("fir4 {:.4e} <= {:.4e} over {}; 2-tap {:.4e} <= {:.4e} over {} ({:.1f}s)",
                          to_double(fir4_worst), to_double(fir4.plan.output_bound), random.size(),
                          to_double(tap2_worst), to_double(tap2.plan.output_bound), all.size(), t)};
}

// A random n-tap filter with coefficients in (-2, 2) and inputs that fit W.
std::string random_fir(std::mt19937_64& rng, int taps, int width) {
  std::uniform_real_distribution<double> coeff(-1.95, 1.95);
  std::uniform_int_distribution<int> ibits(0, 2);
  std::string src;
  std::string expr;
  for (int k = 0; k < taps; ++k) {
    const int i = ibits(rng);
    const int in_width = std::uniform_int_distribution<int>(std::max(4, i + 2), width)(rng);
    src += fmt::format("input x{} : sif(1/{}/{});\n", k, i, in_width - 1 - i);
    src += fmt::format("const h{} = {:.6f};\n", k, coeff(rng));
    expr += fmt::format("{}h{} * x{}", k ? " + " : "", k, k);
  }
  return src + "output y = " + expr + ";\n";
}

Verdict overflow_freedom() {
  const auto start = Clock::now();
  std::mt19937_64 rng(6);
  const int specs = 12;
  const std::size_t per_spec = 100000 / specs + 1;
  std::size_t total = 0;
  std::string failure;
  for (int s = 0; s < specs; ++s) {
    const int taps = 2 + s % 7;
    const int width = 8 + (s * 24) / (specs - 1);
    const ParsedSpec spec = parse_spec(random_fir(rng, taps, width));
    Built b;
    try {
      b = build(spec, test::config_for(width));
    } catch (const CannotFitError& e) {
      failure = fmt::format("spec {} ({} taps, W={}) cannot fit: {}", s, taps, width, e.what());
      break;
    }
    for (const TestVector& v : generate_vectors(spec.bindings, per_spec - 3, 100 + s)) {
      try {
        run_fixed(b.plan.graph, spec.bindings, v);
      } catch (const InvariantViolation& e) {
        failure = fmt::format("spec {} ({} taps, W={}): {}", s, taps, width, e.what());
        break;
      }
      ++total;
    }
    if (!failure.empty()) break;
  }
  const double t = seconds_since(start);
  const bool ok = failure.empty() && total >= 100000 && t < 60.0;
  return {ok, failure.empty() ? fmt::format("{} specs, 2-8 taps, W 8-32, {} vectors ({:.1f}s)", specs, total, t)
                              : failure};
}

Verdict oracle_equivalence() {
  const auto start = Clock::now();
  OptimizerConfig config = test::config_for(8);
  config.k_max = 2;
  std::size_t graphs = 0;
  std::size_t infeasible = 0;
  std::string failure;
  for (const std::string& src : test::two_operation_specs()) {
    const ParsedSpec spec = parse_spec(src);
    const Topology topo{spec.dfg, describe_topology(spec.dfg)};
    const test::ExhaustiveResult oracle = test::exhaustive_minimum(spec.dfg, spec.bindings, config);
    ++graphs;
    SearchOptions full;
    full.prune = false;
    try {
      const SynthesisPlan pruned = combinatorial_search(topo, spec.bindings, config, {});
      const SynthesisPlan unpruned = combinatorial_search(topo, spec.bindings, config, full);
      if (!oracle.best || pruned.output_bound != *oracle.best || unpruned.output_bound != pruned.output_bound) {
        failure = "mismatch on: " + src;
        break;
      }
    } catch (const CannotFitError&) {
      ++infeasible;
      if (oracle.best) {
        failure = "search found nothing but enumeration did: " + src;
        break;
      }
    }
  }
  const double t = seconds_since(start);
  return {failure.empty() && t < 10.0,
          failure.empty() ? fmt::format("{} graphs agree ({} infeasible) ({:.1f}s)", graphs, infeasible, t) : failure};
}

Verdict topology_argmin() {
  const ParsedSpec spec = parse_spec(
      "input a : sif(1/0/15);\ninput b : sif(1/3/12);\ninput c : sif(1/0/15);\ninput d : sif(1/5/10);\n"
      "output s = a + b + c + d;\n");
  const auto shapes = enumerate_topologies(spec.dfg, 6);
  bool ok = shapes.size() == 5;
  std::string detail = fmt::format("{} shapes", shapes.size());
  for (bool chain : {false, true}) {
    OptimizerConfig config = test::config_for(16);
    config.enable_chain_alloc = chain;
    const SynthesisPlan best = optimize(spec.dfg, spec.bindings, config);
    Rational baseline = 0;
    for (std::size_t k = 0; k < shapes.size(); ++k) {
      const SynthesisPlan p = chain ? chain_allocate(shapes[k], spec.bindings, config)
                                    : pairwise_plan(shapes[k], spec.bindings, config);
      if (k == 0) baseline = p.output_bound;
      ok = ok && best.output_bound <= p.output_bound;
    }
    detail += fmt::format("; {}: best {:.4e} ({}) vs left-assoc {:.4e}", chain ? "chain" : "pairwise",
                          to_double(best.output_bound), best.topology.description, to_double(baseline));
  }
  return {ok, detail};
}

Verdict chain_dominance() {
  const ParsedSpec spec = test::load_spec("sum8.fps");
  const OptimizerConfig config = test::config_for(16);
  const Topology topo{spec.dfg, describe_topology(spec.dfg)};
  const SynthesisPlan chain = chain_allocate(topo, spec.bindings, config);
  const SynthesisPlan pair = pairwise_plan(topo, spec.bindings, config);
  const int acc = chain.chains.empty() ? 0 : accumulator_width(16, chain.chains[0].terms());
  const bool ok = chain.chains.size() == 1 && acc == 19 && chain.output_bound <= pair.output_bound;
  return {ok, fmt::format("chain {:.4e} <= pairwise {:.4e}, accumulator {} bits", to_double(chain.output_bound),
                          to_double(pair.output_bound), acc)};
}

Verdict c_differential() {
  const auto start = Clock::now();
  const Built b = build(test::load_spec("fir2_w8.fps"), test::config_for(8));
  const EmittedArtifact c = emit_c(b.plan, b.spec.bindings, "fir2");
  const auto vectors = test::exhaustive_vectors(b.spec.bindings);
  std::vector<std::vector<std::int64_t>> expected;
  for (const TestVector& v : vectors) {
    std::vector<std::int64_t> row;
    for (const Raw& r : run_fixed(b.plan.graph, b.spec.bindings, v).raws) row.push_back(static_cast<std::int64_t>(r));
    expected.push_back(std::move(row));
  }
  std::string how;
  std::size_t mismatches = 0;
  if (auto rows = test::run_compiled_c(c, b.spec.bindings, "fir2", 1, vectors)) {
    how = "compiled with " + test::c_compiler();
    for (std::size_t k = 0; k < vectors.size(); ++k) mismatches += (*rows)[k] != expected[k];
  } else {
    how = "no C compiler; C-semantics interpreter";
    const test::CExpressionInterpreter interp(c.text);
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      std::vector<std::int64_t> in;
      for (const Raw& r : vectors[k].raws) in.push_back(static_cast<std::int64_t>(r));
      mismatches += interp.run(in) != expected[k];
    }
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && vectors.size() == 65536 && t < 30.0,
          fmt::format("{} cases, {} mismatches, {} ({:.1f}s)", vectors.size(), mismatches, how, t)};
}

Verdict determinism() {
  const std::string spec = (test::spec_dir() / "fir4.fps").string();
  std::array<fs::path, 2> dirs{test::temp_dir("accept"), test::temp_dir("accept")};
  for (const fs::path& d : dirs) {
    const test::CommandResult r =
        test::run_command(std::string(FPSYNT_BIN) + " synth " + spec + " -o " + d.string() + " >/dev/null 2>&1");
    if (r.status != 0) return {false, fmt::format("fpsynt synth exited {}", r.status)};
  }
  for (const char* f : {"fir4.fps.c", "fir4.fps.vhd", "report.json"}) {
    if (test::read_text(dirs[0] / f) != test::read_text(dirs[1] / f)) return {false, std::string(f) + " differs"};
  }
  for (const fs::path& d : dirs) fs::remove_all(d);
  return {true, ".c, .vhd and report.json byte-identical across two runs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"format widths", format_widths},
      {"worked decode", worked_decode},
      {"coefficient literals", coefficient_literals},
      {"FIR-4 accuracy", fir4_accuracy},
      {"predicted-bound soundness", bound_soundness},
      {"overflow freedom", overflow_freedom},
      {"optimizer oracle equivalence", oracle_equivalence},
      {"topology argmin", topology_argmin},
      {"chain allocation dominance", chain_dominance},
      {"C differential equivalence", c_differential},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
