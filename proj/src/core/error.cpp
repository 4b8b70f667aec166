#include "fpsynt/error.hpp"

namespace fpsynt {

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string text;
  for (const auto& d : diagnostics) {
    if (!text.empty()) text += "\n";
    if (d.line > 0) text += "line " + std::to_string(d.line) + ": ";
    text += d.message;
  }
  return text;
}

std::string join_cycle(const std::vector<std::string>& cycle) {
  std::string text = "graph cycle:";
  for (const auto& name : cycle) text += " " + name + " ->";
  if (!cycle.empty()) text += " " + cycle.front();
  return text;
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

GraphCycleError::GraphCycleError(std::vector<std::string> cycle)
    : Error(join_cycle(cycle)), cycle_(std::move(cycle)) {}

}  // namespace fpsynt
