#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chlang/parser.hpp"

namespace chlang::detail {

enum class TokKind { Ident, Int, String, Punct, End };

struct Token {
  TokKind kind;
  std::string text;  // for String: the decoded contents
  SourcePos pos;
};

// Thrown inside the parsers and converted to a ParseError at the API boundary.
struct LexParseError {
  ParseError err;
};

[[noreturn]] inline void fail_at(SourcePos pos, std::string message,
                                 std::vector<std::string> expected = {}) {
  throw LexParseError{ParseError{pos, std::move(message), std::move(expected)}};
}

// Tokenizes the whole input. Punctuators: ( ) { } , ; : = == != < <= > >=
// + - * / % ! && || . Comments run from "//" to end of line.
std::vector<Token> lex(std::string_view text);

}  // namespace chlang::detail
