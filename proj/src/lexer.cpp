#include "lexer.hpp"

#include <cctype>

namespace chlang::detail {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    SourcePos start = pos;
    if (is_ident_start(c)) {
      std::size_t begin = i;
      while (i < text.size() && is_ident_char(text[i])) advance();
      out.push_back({TokKind::Ident, std::string(text.substr(begin, i - begin)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t begin = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) advance();
      out.push_back({TokKind::Int, std::string(text.substr(begin, i - begin)), start});
      continue;
    }
    if (c == '"') {
      advance();
      std::string value;
      while (true) {
        if (i >= text.size() || text[i] == '\n') {
          fail_at(start, "unterminated string literal");
        }
        char d = text[i];
        if (d == '"') {
          advance();
          break;
        }
        if (d == '\\') {
          if (i + 1 >= text.size()) fail_at(pos, "unterminated escape sequence");
          char e = text[i + 1];
          if (e == '"') value += '"';
          else if (e == '\\') value += '\\';
          else if (e == 'n') value += '\n';
          else fail_at(pos, std::string("unknown escape sequence \\") + e);
          advance(2);
          continue;
        }
        value += d;
        advance();
      }
      out.push_back({TokKind::String, std::move(value), start});
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (two('=', '=') || two('!', '=') || two('<', '=') || two('>', '=') ||
        two('&', '&') || two('|', '|')) {
      out.push_back({TokKind::Punct, std::string(text.substr(i, 2)), start});
      advance(2);
      continue;
    }
    switch (c) {
      case '(': case ')': case '{': case '}': case ',': case ';': case ':':
      case '=': case '<': case '>': case '+': case '-': case '*': case '/':
      case '%': case '!':
        out.push_back({TokKind::Punct, std::string(1, c), start});
        advance();
        continue;
      default:
        fail_at(start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({TokKind::End, "", pos});
  return out;
}

}  // namespace chlang::detail
