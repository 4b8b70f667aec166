#include "fpsynt/frontend.hpp"

#include <sstream>

namespace fpsynt {

namespace {

class Printer {
 public:
  explicit Printer(const ParsedSpec& spec) : spec_(spec) {}

  // Precedence: 1 for sums, 2 for products, 3 for atoms.
  std::string expr(NodeId id, int& prec) const {
    const Node& n = spec_.dfg[id];
    switch (n.kind) {
      case NodeKind::Const: {
        const ConstBinding* c = spec_.bindings.constant(n.name);
        prec = 3;
        if (c != nullptr && c->literal) return c->text;
        return n.name;
      }
      case NodeKind::Input:
        prec = 3;
        return n.name;
      case NodeKind::Mul: {
        int lp = 0;
        int rp = 0;
        std::string lhs = expr(n.operands[0], lp);
        std::string rhs = expr(n.operands[1], rp);
        if (lp < 2) lhs = "(" + lhs + ")";
        if (rp < 3) rhs = "(" + rhs + ")";
        prec = 2;
        return lhs + " * " + rhs;
      }
      case NodeKind::Add: {
        int lp = 0;
        int rp = 0;
        std::string lhs = expr(n.operands[0], lp);
        std::string rhs = expr(n.operands[1], rp);
        // A negated first operand has no surface syntax; spell it 0 - a.
        if (n.negate[0]) lhs = "0 - " + (lp < 2 ? "(" + lhs + ")" : lhs);
        if (rp < 2) rhs = "(" + rhs + ")";
        prec = 1;
        return lhs + (n.negate[1] ? " - " : " + ") + rhs;
      }
      default:
        // Formatting nodes never appear in a parsed spec; print through them.
        return expr(n.operands.at(0), prec);
    }
  }

 private:
  const ParsedSpec& spec_;
};

}  // namespace

std::string print_spec(const ParsedSpec& spec) {
  std::ostringstream out;
  for (const auto& in : spec.bindings.inputs) {
    out << "input " << in.name << " : sif(" << in.fmt.s << "/" << in.fmt.i << "/" << in.fmt.f << ");\n";
  }
  for (const auto& c : spec.bindings.consts) {
    if (!c.literal) out << "const " << c.name << " = " << c.text << ";\n";
  }
  Printer printer(spec);
  for (NodeId id : spec.dfg.outputs()) {
    const Node& n = spec.dfg[id];
    int prec = 0;
    out << "output " << n.name << " = " << printer.expr(n.operands[0], prec) << ";\n";
  }
  return out.str();
}

}  // namespace fpsynt
