#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fpsynt::frontend {

enum class TokenKind { Ident, Number, Colon, Semicolon, Equals, Slash, Plus, Minus, Star, LParen, RParen, End };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

std::string_view describe(TokenKind kind);

/// Splits `.fps` source into tokens; `#` starts a comment to end of line.
/// Throws ParseError on characters outside the grammar.
std::vector<Token> tokenize(std::string_view source);

}  // namespace fpsynt::frontend
