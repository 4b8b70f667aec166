// fpsynt command-line front end.

#include "fpsynt/driver.hpp"
#include "fpsynt/version.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("fpsynt");
  logger->set_pattern("fpsynt: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("FPSYNT_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Options {
  std::string spec;
  int width = 16;
  std::string emit = "c,vhdl";
  std::string opt = "comb,topo,chain";
  std::string quantize = "round";
  std::string output = ".";
  int k_max = 3;
  int n_max = 6;
  int acc_limit = 64;
  std::string vectors;
  std::size_t random = 90;
  std::uint64_t seed = 1;
};

void add_synth_options(CLI::App& cmd, Options& o) {
  cmd.add_option("spec", o.spec, "Spec file (.fps)")->required();
  cmd.add_option("--width", o.width, "Datapath word width in bits")->capture_default_str();
  cmd.add_option("--emit", o.emit, "Targets to emit: c, vhdl (comma-separated, or none)")->capture_default_str();
  cmd.add_option("--opt", o.opt, "Optimizations: comb, topo, chain (comma-separated, or none)")
      ->capture_default_str();
  cmd.add_option("--quantize", o.quantize, "Constant quantization")
      ->check(CLI::IsMember({"round", "trunc"}))
      ->capture_default_str();
  cmd.add_option("-o,--output", o.output, "Output directory")->capture_default_str();
  cmd.add_option("--k-max", o.k_max, "Largest pre-scale shift / extra truncation searched")
      ->check(CLI::Range(0, 16))
      ->capture_default_str();
  cmd.add_option("--n-max-topologies", o.n_max, "Largest chain re-associated exhaustively")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();
  cmd.add_option("--acc-width-limit", o.acc_limit, "Widest chain accumulator allowed")
      ->check(CLI::Range(4, 256))
      ->capture_default_str();
}

// Returns an error message, or empty on success.
std::string to_config(const Options& o, fpsynt::RunConfig& c) {
  c.optimizer.width = o.width;
  c.optimizer.quantize = o.quantize == "trunc" ? fpsynt::QuantizeMode::Trunc : fpsynt::QuantizeMode::Round;
  c.optimizer.k_max = o.k_max;
  c.optimizer.n_max_topologies = o.n_max;
  c.optimizer.accumulator_width_limit = o.acc_limit;
  c.emit_c = c.emit_vhdl = false;
  for (const std::string& e : split_list(o.emit)) {
    if (e == "c") {
      c.emit_c = true;
    } else if (e == "vhdl") {
      c.emit_vhdl = true;
    } else if (e != "none") {
      return "unknown --emit target '" + e + "'";
    }
  }
  c.optimizer.enable_combinatorial = c.optimizer.enable_topology_opt = c.optimizer.enable_chain_alloc = false;
  for (const std::string& e : split_list(o.opt)) {
    if (e == "comb") {
      c.optimizer.enable_combinatorial = true;
    } else if (e == "topo") {
      c.optimizer.enable_topology_opt = true;
    } else if (e == "chain") {
      c.optimizer.enable_chain_alloc = true;
    } else if (e != "none") {
      return "unknown --opt pass '" + e + "'";
    }
  }
  c.output_dir = o.output;
  c.random_vectors = o.random;
  c.seed = o.seed;
  if (!o.vectors.empty()) c.vectors = o.vectors;
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"fpsynt: fixed-point datapath synthesis"};
  app.set_version_flag("--version", std::string(fpsynt::kVersion));
  app.require_subcommand(1);

  Options synth_opts, sim_opts;
  CLI::App* synth = app.add_subcommand("synth", "Synthesize C and VHDL from a spec");
  add_synth_options(*synth, synth_opts);
  CLI::App* simulate = app.add_subcommand("simulate", "Synthesize and compare against a floating-point reference");
  add_synth_options(*simulate, sim_opts);
  auto* vectors = simulate->add_option("--vectors", sim_opts.vectors, "CSV vector file");
  simulate->add_option("--random", sim_opts.random, "Number of random vectors")
      ->excludes(vectors)
      ->capture_default_str();
  simulate->add_option("--seed", sim_opts.seed, "Random seed")->excludes(vectors)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fpsynt::kExitInvalid;
  }

  const bool is_synth = synth->parsed();
  const Options& o = is_synth ? synth_opts : sim_opts;
  fpsynt::RunConfig config;
  if (std::string msg = to_config(o, config); !msg.empty()) {
    std::cerr << "fpsynt: " << msg << "\n";
    return fpsynt::kExitInvalid;
  }
  return is_synth ? fpsynt::cmd_synth(o.spec, config, std::cout, std::cerr)
                  : fpsynt::cmd_simulate(o.spec, config, std::cout, std::cerr);
}
