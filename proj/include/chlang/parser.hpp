#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chlang/ast.hpp"

namespace chlang {

// 1-based; column counts characters.
struct SourcePos {
  int line = 1;
  int column = 1;
};

struct ParseError {
  SourcePos pos;
  std::string message;
  std::vector<std::string> expected;
};

template <class T>
using ParseResult = std::variant<T, ParseError>;

// Parses a full source file (a list of "proc" definitions). The returned
// program has an empty initial state. Duplicate (name, arity) pairs are a
// parse-level error.
ParseResult<Program> parse_program(std::string_view text);

// Parses a single statement, as used for the CLI --goal flag.
ParseResult<StmtPtr> parse_goal(std::string_view text);

// Parses "name=value" pairs separated by commas; values are literals
// (integers, strings, true/false). Used for the CLI --state flag.
ParseResult<std::vector<std::pair<std::string, Value>>> parse_state_bindings(
    std::string_view text);

// Canonical surface text. parse_goal(print_stmt(s)) is stmt-equal to s.
std::string print_stmt(const StmtPtr& s);
std::string print_expr(const ExprPtr& e);
std::string print_program(const Program& p);

}  // namespace chlang
