#include "lexer.hpp"

#include "fpsynt/error.hpp"

#include <cctype>

namespace fpsynt::frontend {

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::Colon: return "':'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Equals: return "'='";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t pos = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (source[pos] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++pos;
    }
  };

  while (pos < source.size()) {
    const char c = source[pos];
    if (c == '#') {
      while (pos < source.size() && source[pos] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int tok_line = line;
    const int tok_column = column;
    if (ident_start(c)) {
      std::size_t end = pos;
      while (end < source.size() && ident_char(source[end])) ++end;
      tokens.push_back({TokenKind::Ident, std::string(source.substr(pos, end - pos)), tok_line, tok_column});
      advance(end - pos);
      continue;
    }
    if (digit(c) || (c == '.' && pos + 1 < source.size() && digit(source[pos + 1]))) {
      std::size_t end = pos;
      while (end < source.size() && digit(source[end])) ++end;
      if (end < source.size() && source[end] == '.') {
        ++end;
        while (end < source.size() && digit(source[end])) ++end;
      }
      if (end < source.size() && (source[end] == 'e' || source[end] == 'E')) {
        std::size_t exp = end + 1;
        if (exp < source.size() && (source[exp] == '+' || source[exp] == '-')) ++exp;
        if (exp < source.size() && digit(source[exp])) {
          end = exp;
          while (end < source.size() && digit(source[end])) ++end;
        }
      }
      tokens.push_back({TokenKind::Number, std::string(source.substr(pos, end - pos)), tok_line, tok_column});
      advance(end - pos);
      continue;
    }
    TokenKind kind;
    switch (c) {
      case ':': kind = TokenKind::Colon; break;
      case ';': kind = TokenKind::Semicolon; break;
      case '=': kind = TokenKind::Equals; break;
      case '/': kind = TokenKind::Slash; break;
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '*': kind = TokenKind::Star; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      default:
        throw ParseError(tok_line, tok_column, std::string("unexpected character '") + c + "'");
    }
    tokens.push_back({kind, std::string(1, c), tok_line, tok_column});
    advance(1);
  }
  tokens.push_back({TokenKind::End, "", line, column});
  return tokens;
}

}  // namespace fpsynt::frontend
