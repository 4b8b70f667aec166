#pragma once

#include "fpsynt/optimizer.hpp"
#include "fpsynt/simulator.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fpsynt {

struct ReportContext {
  /// Spec file name without directories.
  std::string spec_name;
  OptimizerConfig config;
  std::vector<std::string> emit;
  std::optional<ErrorStats> stats;
  /// How the simulation vectors were obtained, e.g. "random 90 seed 1".
  std::string vector_source;
};

nlohmann::ordered_json stats_json(const ErrorStats& stats);

/// Machine-readable synthesis report; deterministic for a given plan and
/// context.
nlohmann::ordered_json make_report(const SynthesisPlan& plan, const ReportContext& context);

/// Aligned per-node summary: name, kind, SIF, scale, operation, error.
std::string render_table(const SynthesisPlan& plan);

}  // namespace fpsynt
