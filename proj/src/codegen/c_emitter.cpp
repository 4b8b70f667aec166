#include "fpsynt/codegen.hpp"

#include "fpsynt/error.hpp"
#include "fpsynt/version.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <functional>

namespace fpsynt {

namespace {

constexpr auto kCKeywords = std::to_array<std::string_view>({
    "auto",     "break",    "case",     "char",     "const",    "continue", "default",  "do",     "double",
    "else",     "enum",     "extern",   "float",    "for",      "goto",     "if",       "inline", "int",
    "long",     "register", "restrict", "return",   "short",    "signed",   "sizeof",   "static", "struct",
    "switch",   "typedef",  "union",    "unsigned", "void",     "volatile", "while",    "bool",   "true",
    "false",    "int32_t",  "int64_t",  "INT64_C",  "fpsynt_shr", "_Bool",  "main",     "NULL"});

std::string c_name(const std::string& name) {
  if (std::find(kCKeywords.begin(), kCKeywords.end(), name) != kCKeywords.end()) return name + "_";
  return name;
}

std::string literal(const Raw& raw, int bits) {
  std::string digits = to_string(raw < 0 ? Raw(-raw) : raw);
  if (bits == 64 && raw > Raw(2147483647)) digits = "INT64_C(" + digits + ")";
  return raw < 0 ? "(-" + digits + ")" : digits;
}

}  // namespace

int host_type_bits(const SynthesisPlan& plan) {
  int widest = 0;
  for (const Node& n : plan.graph.nodes()) widest = std::max(widest, n.signal.width());
  if (widest <= 32) return 32;
  if (widest <= 64) return 64;
  throw EmitError(fmt::format("a {}-bit intermediate does not fit a 64-bit C integer; use a narrower --width",
                              widest));
}

EmittedArtifact emit_c(const SynthesisPlan& plan, const Bindings& bindings, const std::string& name) {
  const Dfg& g = plan.graph;
  const int bits = host_type_bits(plan);
  const std::string type = fmt::format("int{}_t", bits);
  const std::string fn = c_name(sanitize_identifier(name));

  std::function<std::string(NodeId, bool)> expr = [&](NodeId id, bool portable) -> std::string {
    const Node& n = g[id];
    switch (n.kind) {
      case NodeKind::Input: return c_name(n.name);
      case NodeKind::Const: return literal(n.const_raw, bits);
      case NodeKind::Output: return expr(n.operands[0], portable);
      case NodeKind::Mul:
        return "(" + expr(n.operands[0], portable) + " * " + expr(n.operands[1], portable) + ")";
      case NodeKind::ShiftRight:
      case NodeKind::Truncate: {
        const std::string a = expr(n.operands[0], portable);
        if (n.amount == 0) return a;
        return portable ? fmt::format("fpsynt_shr({}, {})", a, n.amount) : fmt::format("({} >> {})", a, n.amount);
      }
      case NodeKind::Add: {
        const std::string a = expr(n.operands[0], portable);
        const std::string b = expr(n.operands[1], portable);
        if (!n.negate[0]) return "(" + a + (n.negate[1] ? " - " : " + ") + b + ")";
        if (!n.negate[1]) return "(" + b + " - " + a + ")";
        return "(-" + a + " - " + b + ")";
      }
    }
    return {};
  };

  std::string out;
  out += fmt::format("/* Generated by fpsynt {}: fixed-point datapath '{}', W={}.\n", kVersion, fn, plan.width);
  out += " *\n";
  for (NodeId id : g.topo_order()) {
    const Node& n = g[id];
    out += fmt::format(" * -- {}: SIF{} E={} err<={:.6e}\n", n.name, n.signal.fmt.str(), n.signal.scale,
                       to_double(n.error.accumulated));
  }
  out += " *\n";
  for (NodeId id : g.outputs()) {
    const Node& n = g[id];
    out += fmt::format(" * Output {} is a raw SIF{} word with E={}: {}_true = {} * 2^({}).\n", n.name,
                       n.signal.fmt.str(), n.signal.scale, n.name, n.name, n.signal.lsb());
  }
  out += " *\n";
  out += " * Right shift of a negative signed value is implementation-defined in C.\n";
  out += " * The default code assumes an arithmetic shift; define FPSYNT_PORTABLE_SHIFT\n";
  out += " * to use an explicit floor shift instead.\n";
  out += " */\n";
  out += "#include <stdint.h>\n\n";
  out += "#ifdef FPSYNT_PORTABLE_SHIFT\n";
  out += fmt::format("static inline {0} fpsynt_shr({0} v, int k) {{\n", type);
  out += "  return v >= 0 ? (v >> k) : -((-(v + 1)) >> k) - 1;\n";
  out += "}\n";
  out += "#endif\n\n";

  std::string params;
  for (const InputBinding& in : bindings.inputs) {
    if (!params.empty()) params += ", ";
    params += type + " " + c_name(in.name);
  }
  for (NodeId id : g.outputs()) {
    if (!params.empty()) params += ", ";
    params += type + " *" + c_name(g[id].name);
  }
  if (params.empty()) params = "void";
  out += fmt::format("void {}({}) {{\n", fn, params);
  for (bool portable : {false, true}) {
    out += portable ? "#else\n" : "#ifndef FPSYNT_PORTABLE_SHIFT\n";
    for (NodeId id : g.outputs()) out += fmt::format("  *{} = {};\n", c_name(g[id].name), expr(id, portable));
  }
  out += "#endif\n";
  out += "}\n";
  return EmittedArtifact{Language::C, std::move(out)};
}

}  // namespace fpsynt
