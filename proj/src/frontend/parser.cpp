#include "fpsynt/frontend.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>
#include <stdexcept>

namespace fpsynt {

const InputBinding* Bindings::input(std::string_view name) const {
  for (const auto& in : inputs) {
    if (in.name == name) return &in;
  }
  return nullptr;
}

const ConstBinding* Bindings::constant(std::string_view name) const {
  for (const auto& c : consts) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::optional<std::size_t> Bindings::input_index(std::string_view name) const {
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (inputs[k].name == name) return k;
  }
  return std::nullopt;
}

namespace {

using frontend::Token;
using frontend::TokenKind;

struct Expr {
  enum class Kind { Ref, Number, Binary } kind;
  std::string text;
  char op = 0;
  std::unique_ptr<Expr> lhs;
  std::unique_ptr<Expr> rhs;
  int line = 0;
  int column = 0;
};

enum class DeclKind { Input, Const, Output };

struct Decl {
  DeclKind kind;
  std::string name;
  int line = 0;
  int column = 0;
  SifFormat fmt;                // Input
  std::string number;           // Const
  std::unique_ptr<Expr> expr;   // Output
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::vector<Decl> parse_decls() {
    std::vector<Decl> decls;
    while (peek().kind != TokenKind::End) decls.push_back(parse_decl());
    return decls;
  }

  const Token& end_token() const { return tokens_.back(); }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(at.line, at.column, message);
  }

  const Token& expect(TokenKind kind) {
    const Token& tok = peek();
    if (tok.kind != kind) {
      fail(tok, "expected " + std::string(frontend::describe(kind)) + ", found " + found(tok));
    }
    return take();
  }

  static std::string found(const Token& tok) {
    if (tok.kind == TokenKind::End) return "end of input";
    return "'" + tok.text + "'";
  }

  Decl parse_decl() {
    const Token& keyword = peek();
    if (keyword.kind != TokenKind::Ident ||
        (keyword.text != "input" && keyword.text != "const" && keyword.text != "output")) {
      fail(keyword, "expected 'input', 'const' or 'output', found " + found(keyword));
    }
    take();
    const Token& name = expect(TokenKind::Ident);
    Decl decl;
    decl.name = name.text;
    decl.line = name.line;
    decl.column = name.column;
    if (keyword.text == "input") {
      decl.kind = DeclKind::Input;
      expect(TokenKind::Colon);
      const Token& sif = expect(TokenKind::Ident);
      if (sif.text != "sif") fail(sif, "expected 'sif', found " + found(sif));
      expect(TokenKind::LParen);
      decl.fmt.s = parse_int();
      expect(TokenKind::Slash);
      decl.fmt.i = parse_int();
      expect(TokenKind::Slash);
      decl.fmt.f = parse_int();
      expect(TokenKind::RParen);
    } else if (keyword.text == "const") {
      decl.kind = DeclKind::Const;
      expect(TokenKind::Equals);
      std::string sign;
      if (peek().kind == TokenKind::Minus) {
        take();
        sign = "-";
      }
      decl.number = sign + expect(TokenKind::Number).text;
    } else {
      decl.kind = DeclKind::Output;
      expect(TokenKind::Equals);
      decl.expr = parse_expr();
    }
    expect(TokenKind::Semicolon);
    return decl;
  }

  int parse_int() {
    const Token& tok = expect(TokenKind::Number);
    if (!std::all_of(tok.text.begin(), tok.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      fail(tok, "expected an integer bit count, found '" + tok.text + "'");
    }
    if (tok.text.size() > 4) fail(tok, "bit count '" + tok.text + "' is too large");
    return std::stoi(tok.text);
  }

  std::unique_ptr<Expr> binary(char op, std::unique_ptr<Expr> lhs, std::unique_ptr<Expr> rhs, const Token& at) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  std::unique_ptr<Expr> parse_expr() {
    auto lhs = parse_term();
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      const Token& op = take();
      auto rhs = parse_term();
      lhs = binary(op.kind == TokenKind::Plus ? '+' : '-', std::move(lhs), std::move(rhs), op);
    }
    return lhs;
  }

  std::unique_ptr<Expr> parse_term() {
    auto lhs = parse_factor();
    while (peek().kind == TokenKind::Star) {
      const Token& op = take();
      auto rhs = parse_factor();
      lhs = binary('*', std::move(lhs), std::move(rhs), op);
    }
    return lhs;
  }

  std::unique_ptr<Expr> parse_factor() {
    const Token& tok = peek();
    if (tok.kind == TokenKind::LParen) {
      take();
      auto inner = parse_expr();
      expect(TokenKind::RParen);
      return inner;
    }
    if (tok.kind == TokenKind::Ident || tok.kind == TokenKind::Number) {
      take();
      auto e = std::make_unique<Expr>();
      e->kind = tok.kind == TokenKind::Ident ? Expr::Kind::Ref : Expr::Kind::Number;
      e->text = tok.text;
      e->line = tok.line;
      e->column = tok.column;
      return e;
    }
    fail(tok, "expected identifier, number or '(', found " + found(tok));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// An operand reference during lowering: either a node already in the graph
// or an operation that has not been materialized yet.
struct Handle {
  bool pending = false;
  std::size_t index = 0;
  int level = 0;
};

struct PendingOp {
  NodeKind kind;
  std::array<Handle, 2> operands;
  std::array<bool, 2> negate{false, false};
  int level = 0;
};

class Lowering {
 public:
  Lowering(std::vector<Decl>& decls, const Token& end) : decls_(decls), end_(end) {}

  ParsedSpec run() {
    ParsedSpec spec;
    std::set<std::string> taken;
    for (const auto& d : decls_) {
      if (!taken.insert(d.name).second) {
        throw ParseError(d.line, d.column, "duplicate declaration of '" + d.name + "'");
      }
    }
    taken_ = taken;

    // Sources first, in declaration order.
    for (auto& d : decls_) {
      if (d.kind == DeclKind::Input) {
        spec.bindings.inputs.push_back({d.name, d.fmt, d.line});
      } else if (d.kind == DeclKind::Const) {
        Rational value;
        try {
          value = parse_decimal(d.number);
        } catch (const std::invalid_argument& e) {
          throw ParseError(d.line, d.column, e.what());
        }
        spec.bindings.consts.push_back({d.name, value, d.number, false, d.line});
      }
    }
    for (auto& d : decls_) {
      if (d.kind == DeclKind::Input) {
        Node n;
        n.name = d.name;
        n.kind = NodeKind::Input;
        spec.dfg.add(std::move(n));
      } else if (d.kind == DeclKind::Const) {
        Node n;
        n.name = d.name;
        n.kind = NodeKind::Const;
        spec.dfg.add(std::move(n));
      }
    }

    // Lower outputs in order; names become visible after their declaration.
    std::vector<std::pair<std::string, Handle>> outputs;
    std::set<std::string> visible;
    for (auto& d : decls_) {
      if (d.kind == DeclKind::Output) {
        Handle root = lower(*d.expr, spec, visible, outputs);
        outputs.emplace_back(d.name, root);
      }
      visible.insert(d.name);
    }
    if (outputs.empty()) throw ParseError(end_.line, end_.column, "spec declares no outputs");

    // Materialize operations by (level, creation order) so names follow a
    // topological order.
    std::vector<std::size_t> order(pending_.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pending_[a].level < pending_[b].level; });
    std::vector<NodeId> materialized(pending_.size());
    auto resolve = [&](const Handle& h) { return h.pending ? materialized.at(h.index) : h.index; };
    int counter = 0;
    for (std::size_t k : order) {
      const PendingOp& op = pending_[k];
      Node n;
      n.name = fresh("t", counter);
      n.kind = op.kind;
      n.negate = op.negate;
      n.operands = {resolve(op.operands[0]), resolve(op.operands[1])};
      materialized[k] = spec.dfg.add(std::move(n));
    }
    for (const auto& [name, root] : outputs) {
      Node n;
      n.name = name;
      n.kind = NodeKind::Output;
      n.operands = {resolve(root)};
      spec.dfg.add(std::move(n));
      spec.bindings.outputs.push_back(name);
    }
    return spec;
  }

 private:
  std::string fresh(const std::string& prefix, int& counter) {
    for (;;) {
      std::string name = prefix + std::to_string(counter++);
      if (taken_.insert(name).second) return name;
    }
  }

  Handle lower(const Expr& e, ParsedSpec& spec, const std::set<std::string>& visible,
               const std::vector<std::pair<std::string, Handle>>& outputs) {
    switch (e.kind) {
      case Expr::Kind::Ref: {
        if (!visible.contains(e.text)) {
          throw ParseError(e.line, e.column, "undeclared identifier '" + e.text + "'");
        }
        for (const auto& [name, root] : outputs) {
          if (name == e.text) return root;
        }
        return Handle{false, *spec.dfg.find(e.text), 0};
      }
      case Expr::Kind::Number: {
        Rational value;
        try {
          value = parse_decimal(e.text);
        } catch (const std::invalid_argument& ex) {
          throw ParseError(e.line, e.column, ex.what());
        }
        Node n;
        n.name = fresh("c", literal_counter_);
        n.kind = NodeKind::Const;
        spec.bindings.consts.push_back({n.name, value, e.text, true, e.line});
        return Handle{false, spec.dfg.add(std::move(n)), 0};
      }
      case Expr::Kind::Binary: {
        Handle lhs = lower(*e.lhs, spec, visible, outputs);
        Handle rhs = lower(*e.rhs, spec, visible, outputs);
        PendingOp op;
        op.kind = e.op == '*' ? NodeKind::Mul : NodeKind::Add;
        op.operands = {lhs, rhs};
        op.negate = {false, e.op == '-'};
        op.level = std::max(lhs.level, rhs.level) + 1;
        pending_.push_back(op);
        return Handle{true, pending_.size() - 1, op.level};
      }
    }
    throw std::logic_error("unreachable");
  }

  std::vector<Decl>& decls_;
  const Token& end_;
  std::set<std::string> taken_;
  std::vector<PendingOp> pending_;
  int literal_counter_ = 0;
};

}  // namespace

ParsedSpec parse_spec(std::string_view source) {
  Parser parser(frontend::tokenize(source));
  std::vector<Decl> decls = parser.parse_decls();
  Lowering lowering(decls, parser.end_token());
  return lowering.run();
}

std::vector<Diagnostic> validate_formats(const Bindings& bindings, int max_width) {
  std::vector<Diagnostic> diagnostics;
  for (const auto& in : bindings.inputs) {
    std::string problem = check_format(in.fmt, max_width);
    if (!problem.empty()) {
      diagnostics.push_back({in.line, "input '" + in.name + "' " + in.fmt.str() + ": " + problem});
    }
  }
  for (const auto& c : bindings.consts) {
    // A constant needs at least one sign bit plus its integer bits.
    if (abs(c.value) >= pow2_rational(max_width - 1)) {
      diagnostics.push_back({c.line, "constant '" + c.text + "' does not fit in " +
                                         std::to_string(max_width) + " bits"});
    }
  }
  if (bindings.outputs.empty()) diagnostics.push_back({0, "spec declares no outputs"});
  return diagnostics;
}

}  // namespace fpsynt
