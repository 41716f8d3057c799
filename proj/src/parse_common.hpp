#pragma once

#include <string>
#include <vector>

#include "chlang/ast.hpp"
#include "lexer.hpp"

namespace chlang::detail {

// Token-stream cursor shared by the statement parser and the mini-Java
// front-end.
struct Cursor {
  const std::vector<Token>* toks;
  std::size_t i = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t j = i + ahead;
    if (j >= toks->size()) j = toks->size() - 1;  // End token
    return (*toks)[j];
  }
  const Token& next() { return (*toks)[i < toks->size() - 1 ? i++ : i]; }
  bool at_end() const { return peek().kind == TokKind::End; }

  bool is_punct(const std::string& p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokKind::Punct && t.text == p;
  }
  bool is_ident(const std::string& name, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokKind::Ident && t.text == name;
  }
  bool accept_punct(const std::string& p) {
    if (is_punct(p)) {
      ++i;
      return true;
    }
    return false;
  }
  void expect_punct(const std::string& p) {
    if (!accept_punct(p)) {
      fail_at(peek().pos, "expected '" + p + "'", {"'" + p + "'"});
    }
  }
  bool accept_keyword(const std::string& kw) {
    if (is_ident(kw)) {
      ++i;
      return true;
    }
    return false;
  }
};

bool is_core_keyword(const std::string& s);

// Identifier that is not a reserved word of the core surface syntax.
std::string parse_ident(Cursor& c);

// Full precedence tower: || > && > comparison > additive > multiplicative
// > unary > atom.
ExprPtr parse_expr(Cursor& c);

// A literal value: INT, STRING, true, false, or -INT.
Value parse_literal_value(Cursor& c);

}  // namespace chlang::detail
