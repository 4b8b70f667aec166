#include "fpsynt/codegen.hpp"

#include "fpsynt/version.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

namespace fpsynt {

namespace {

constexpr auto kVhdlReserved = std::to_array<std::string_view>({
    "abs",       "access",   "after",     "alias",     "all",       "and",      "architecture", "array",
    "assert",    "attribute", "begin",    "block",     "body",      "buffer",   "bus",          "case",
    "component", "configuration", "constant", "disconnect", "downto", "else",   "elsif",        "end",
    "entity",    "exit",     "file",      "for",       "function",  "generate", "generic",      "group",
    "guarded",   "if",       "impure",    "in",        "inertial",  "inout",    "is",           "label",
    "library",   "linkage",  "literal",   "loop",      "map",       "mod",      "nand",         "new",
    "next",      "nor",      "not",       "null",      "of",        "on",       "open",         "or",
    "others",    "out",      "package",   "port",      "postponed", "procedure", "process",     "pure",
    "range",     "record",   "register",  "reject",    "rem",       "report",   "return",       "rol",
    "ror",       "select",   "severity",  "signal",    "shared",    "sla",      "sll",          "sra",
    "srl",       "subtype",  "then",      "to",        "transport", "type",     "unaffected",   "units",
    "until",     "use",      "variable",  "wait",      "when",      "while",    "with",         "xnor",
    "xor"});

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool valid_vhdl(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front())) || name.back() == '_') return false;
  if (name.find("__") != std::string::npos) return false;
  const std::string l = lower(name);
  if (l == "signed" || l == "resize" || l == "shift_right" || l == "to_signed") return false;
  return std::find(kVhdlReserved.begin(), kVhdlReserved.end(), l) == kVhdlReserved.end();
}

// VHDL identifiers are case-insensitive and stricter than the DSL's.
class NameMap {
 public:
  std::string operator()(const std::string& name) {
    auto it = names_.find(name);
    if (it != names_.end()) return it->second;
    std::string base = valid_vhdl(name) ? name : "n_" + sanitize_identifier(name);
    std::string v = base;
    for (int k = 2; used_.contains(lower(v)); ++k) v = base + "_" + std::to_string(k);
    used_.insert(lower(v));
    names_.emplace(name, v);
    return v;
  }

 private:
  std::map<std::string, std::string> names_;
  std::set<std::string> used_;
};

std::string vector_type(int width) { return fmt::format("signed({} downto 0)", width - 1); }

std::string const_value(const Raw& raw, int width) {
  if (raw > Raw(-2147483647) && raw < Raw(2147483647)) return fmt::format("to_signed({}, {})", to_string(raw), width);
  Raw pattern = raw < 0 ? Raw(raw + pow2(width)) : raw;
  std::string bits(width, '0');
  for (int b = width - 1; b >= 0; --b) {
    if (floor_shift(pattern, b) % 2 != 0) bits[width - 1 - b] = '1';
  }
  return "signed'(\"" + bits + "\")";
}

}  // namespace

EmittedArtifact emit_vhdl(const SynthesisPlan& plan, const Bindings& bindings, const std::string& name) {
  const Dfg& g = plan.graph;
  NameMap vname;
  const std::string entity = vname(sanitize_identifier(name));
  for (const InputBinding& in : bindings.inputs) vname(in.name);

  std::string out;
  out += fmt::format("-- Generated by fpsynt {}: fixed-point datapath '{}', W={}.\n", kVersion, entity, plan.width);
  out += "--\n";
  const std::vector<NodeId> order = g.topo_order();
  for (NodeId id : order) {
    const Node& n = g[id];
    out += fmt::format("-- {}: SIF{} E={} err<={:.6e}\n", n.name, n.signal.fmt.str(), n.signal.scale,
                       to_double(n.error.accumulated));
  }
  out += "\nlibrary ieee;\nuse ieee.std_logic_1164.all;\nuse ieee.numeric_std.all;\n\n";

  std::vector<std::string> ports;
  for (const InputBinding& in : bindings.inputs) {
    const auto id = g.find(in.name);
    const int w = id ? g[*id].signal.width() : in.fmt.width();
    ports.push_back(fmt::format("    {} : in  {}", vname(in.name), vector_type(w)));
  }
  for (NodeId id : g.outputs()) {
    ports.push_back(fmt::format("    {} : out {}", vname(g[id].name), vector_type(g[id].signal.width())));
  }
  out += fmt::format("entity {} is\n  port (\n", entity);
  for (std::size_t k = 0; k < ports.size(); ++k) out += ports[k] + (k + 1 < ports.size() ? ";\n" : "\n");
  out += fmt::format("  );\nend entity {};\n\n", entity);

  out += fmt::format("architecture dataflow of {} is\n", entity);
  for (NodeId id : order) {
    const Node& n = g[id];
    if (n.kind == NodeKind::Input || n.kind == NodeKind::Output) continue;
    out += fmt::format("  signal {} : {};\n", vname(n.name), vector_type(n.signal.width()));
  }
  out += "begin\n";

  auto operand = [&](const Node& n, std::size_t k) { return vname(g[n.operands[k]].name); };
  auto is_product = [&](const Node& n) {
    return n.kind == NodeKind::Mul || (n.kind == NodeKind::Truncate && g[n.operands[0]].kind == NodeKind::Mul);
  };
  std::array<std::string, 4> sections{"  --Coefficients\n", "  --Multipliers\n", "  --Adders\n", "  --Outputs\n"};
  for (NodeId id : order) {
    const Node& n = g[id];
    const std::string lhs = vname(n.name);
    const int w = n.signal.width();
    switch (n.kind) {
      case NodeKind::Input:
        break;
      case NodeKind::Const:
        sections[0] += fmt::format("  {} <= {};\n", lhs, const_value(n.const_raw, w));
        break;
      case NodeKind::Mul:
        sections[1] += fmt::format("  {} <= resize({} * {}, {});\n", lhs, operand(n, 0), operand(n, 1), w);
        break;
      case NodeKind::Truncate:
      case NodeKind::ShiftRight:
        sections[is_product(n) ? 1 : 2] +=
            fmt::format("  {} <= resize(shift_right({}, {}), {});\n", lhs, operand(n, 0), n.amount, w);
        break;
      case NodeKind::Add: {
        const int m = std::max({g[n.operands[0]].signal.width(), g[n.operands[1]].signal.width(), w}) + 1;
        const std::string a = fmt::format("resize({}, {})", operand(n, 0), m);
        const std::string b = fmt::format("resize({}, {})", operand(n, 1), m);
        std::string sum;
        if (!n.negate[0]) {
          sum = a + (n.negate[1] ? " - " : " + ") + b;
        } else if (!n.negate[1]) {
          sum = b + " - " + a;
        } else {
          sum = "-" + a + " - " + b;
        }
        sections[2] += fmt::format("  {} <= resize({}, {});\n", lhs, sum, w);
        break;
      }
      case NodeKind::Output:
        sections[3] += fmt::format("  {} <= {};\n", lhs, operand(n, 0));
        break;
    }
  }
  for (const std::string& s : sections) out += s;
  out += "end architecture dataflow;\n";
  return EmittedArtifact{Language::Vhdl, std::move(out)};
}

}  // namespace fpsynt
