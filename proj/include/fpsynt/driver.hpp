#pragma once

#include "fpsynt/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace fpsynt {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,
  kExitCannotFit = 2,
  kExitIo = 3,
  kExitBadVectors = 4,
};

struct RunConfig {
  OptimizerConfig optimizer;
  bool emit_c = true;
  bool emit_vhdl = true;
  std::filesystem::path output_dir = ".";
  std::size_t random_vectors = 90;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> vectors;
};

/// Widest word the tool accepts for declarations and --width.
inline constexpr int kMaxWidth = 64;
inline constexpr int kMinWidth = 4;

/// parse -> analyze/optimize -> emit; writes sources and report.json.
int cmd_synth(const std::filesystem::path& spec, const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse -> analyze/optimize -> simulate; prints stats JSON, writes report.json.
int cmd_simulate(const std::filesystem::path& spec, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fpsynt
