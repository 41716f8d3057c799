#include "chlang/parser.hpp"

#include <cstdint>
#include <stdexcept>

#include "parse_common.hpp"

namespace chlang {

using detail::Cursor;
using detail::Token;
using detail::TokKind;
using detail::fail_at;

namespace detail {

bool is_core_keyword(const std::string& s) {
  return s == "proc" || s == "t" || s == "f" || s == "choose" || s == "true" ||
         s == "false";
}

std::string parse_ident(Cursor& c) {
  const Token& t = c.peek();
  if (t.kind != TokKind::Ident) {
    fail_at(t.pos, "expected identifier", {"identifier"});
  }
  if (is_core_keyword(t.text)) {
    fail_at(t.pos, "'" + t.text + "' is a reserved word", {"identifier"});
  }
  return c.next().text;
}

namespace {

std::int64_t parse_int_token(const Token& t, bool negative) {
  errno = 0;
  std::string digits = negative ? "-" + t.text : t.text;
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(digits, &used);
    if (used != digits.size()) fail_at(t.pos, "malformed integer literal");
    return v;
  } catch (const std::out_of_range&) {
    fail_at(t.pos, "integer literal out of 64-bit range");
  }
}

ExprPtr parse_unary(Cursor& c);

ExprPtr parse_atom(Cursor& c) {
  const Token& t = c.peek();
  switch (t.kind) {
    case TokKind::Int:
      c.next();
      return make_literal(Value(parse_int_token(t, false)));
    case TokKind::String:
      c.next();
      return make_literal(Value(t.text));
    case TokKind::Ident:
      if (t.text == "true") {
        c.next();
        return make_literal(Value(true));
      }
      if (t.text == "false") {
        c.next();
        return make_literal(Value(false));
      }
      if (is_core_keyword(t.text)) {
        fail_at(t.pos, "expected expression", {"expression"});
      }
      c.next();
      return make_var(t.text);
    case TokKind::Punct:
      if (t.text == "(") {
        c.next();
        ExprPtr e = parse_expr(c);
        c.expect_punct(")");
        return e;
      }
      break;
    default:
      break;
  }
  fail_at(t.pos, "expected expression", {"expression"});
}

ExprPtr parse_unary(Cursor& c) {
  if (c.is_punct("!")) {
    c.next();
    return make_unary(UnaryOp::Not, parse_unary(c));
  }
  if (c.is_punct("-")) {
    const Token& minus = c.peek();
    c.next();
    // Fold "-INT" into a negative literal so negative values round-trip.
    if (c.peek().kind == TokKind::Int) {
      const Token& t = c.next();
      (void)minus;
      return make_literal(Value(parse_int_token(t, true)));
    }
    return make_unary(UnaryOp::Neg, parse_unary(c));
  }
  return parse_atom(c);
}

ExprPtr parse_multiplicative(Cursor& c) {
  ExprPtr e = parse_unary(c);
  while (true) {
    BinaryOp op;
    if (c.is_punct("*")) op = BinaryOp::Mul;
    else if (c.is_punct("/")) op = BinaryOp::Div;
    else if (c.is_punct("%")) op = BinaryOp::Mod;
    else break;
    c.next();
    e = make_binary(op, e, parse_unary(c));
  }
  return e;
}

ExprPtr parse_additive(Cursor& c) {
  ExprPtr e = parse_multiplicative(c);
  while (true) {
    BinaryOp op;
    if (c.is_punct("+")) op = BinaryOp::Add;
    else if (c.is_punct("-")) op = BinaryOp::Sub;
    else break;
    c.next();
    e = make_binary(op, e, parse_multiplicative(c));
  }
  return e;
}

ExprPtr parse_comparison(Cursor& c) {
  ExprPtr e = parse_additive(c);
  while (true) {
    BinaryOp op;
    if (c.is_punct("==")) op = BinaryOp::Eq;
    else if (c.is_punct("!=")) op = BinaryOp::Ne;
    else if (c.is_punct("<")) op = BinaryOp::Lt;
    else if (c.is_punct("<=")) op = BinaryOp::Le;
    else if (c.is_punct(">")) op = BinaryOp::Gt;
    else if (c.is_punct(">=")) op = BinaryOp::Ge;
    else break;
    c.next();
    e = make_binary(op, e, parse_additive(c));
  }
  return e;
}

ExprPtr parse_and(Cursor& c) {
  ExprPtr e = parse_comparison(c);
  while (c.accept_punct("&&")) {
    e = make_binary(BinaryOp::And, e, parse_comparison(c));
  }
  return e;
}

}  // namespace

ExprPtr parse_expr(Cursor& c) {
  ExprPtr e = parse_and(c);
  while (c.accept_punct("||")) {
    e = make_binary(BinaryOp::Or, e, parse_and(c));
  }
  return e;
}

Value parse_literal_value(Cursor& c) {
  const Token& t = c.peek();
  if (t.kind == TokKind::Int) {
    c.next();
    return Value(parse_int_token(t, false));
  }
  if (t.kind == TokKind::Punct && t.text == "-" &&
      c.peek(1).kind == TokKind::Int) {
    c.next();
    const Token& n = c.next();
    return Value(parse_int_token(n, true));
  }
  if (t.kind == TokKind::String) {
    c.next();
    return Value(t.text);
  }
  if (t.kind == TokKind::Ident && t.text == "true") {
    c.next();
    return Value(true);
  }
  if (t.kind == TokKind::Ident && t.text == "false") {
    c.next();
    return Value(false);
  }
  fail_at(t.pos, "expected literal value", {"integer", "string", "true", "false"});
}

}  // namespace detail

namespace {

using detail::parse_ident;
using detail::parse_expr;

bool starts_basic(const Cursor& c) {
  const Token& t = c.peek();
  switch (t.kind) {
    case TokKind::Ident:
      return true;
    case TokKind::Int:
    case TokKind::String:
      return true;
    case TokKind::Punct:
      return t.text == "(" || t.text == "!" || t.text == "-";
    default:
      return false;
  }
}

StmtPtr parse_stmt(Cursor& c);

StmtPtr parse_basic(Cursor& c) {
  const Token& t = c.peek();
  if (t.kind == TokKind::Ident) {
    if (t.text == "t") {
      c.next();
      return make_true();
    }
    if (t.text == "f") {
      c.next();
      if (c.accept_punct("(")) {
        const Token& code = c.peek();
        if (code.kind != TokKind::String) {
          fail_at(code.pos, "expected string error code", {"string"});
        }
        if (code.text.empty()) {
          fail_at(code.pos, "error code must be non-empty");
        }
        c.next();
        c.expect_punct(")");
        return make_fail(code.text);
      }
      return make_fail(kGenericFailure);
    }
    if (t.text == "choose") {
      c.next();
      c.expect_punct("(");
      if (c.is_punct(")")) {
        fail_at(c.peek().pos, "choose requires at least one alternative");
      }
      std::vector<StmtPtr> alts;
      alts.push_back(parse_stmt(c));
      while (c.accept_punct(",")) {
        alts.push_back(parse_stmt(c));
      }
      c.expect_punct(")");
      return make_choose(std::move(alts));
    }
    if (!detail::is_core_keyword(t.text)) {
      if (c.is_punct("=", 1)) {
        std::string name = c.next().text;
        c.next();  // '='
        return make_assign(std::move(name), parse_expr(c));
      }
      if (c.is_punct("(", 1)) {
        std::string name = c.next().text;
        c.next();  // '('
        std::vector<ExprPtr> args;
        if (!c.is_punct(")")) {
          args.push_back(parse_expr(c));
          while (c.accept_punct(",")) {
            args.push_back(parse_expr(c));
          }
        }
        c.expect_punct(")");
        return make_call(std::move(name), std::move(args));
      }
    }
  }
  if (c.is_punct("!")) {
    // "!expr" at statement position is a negated condition over the whole
    // following expression.
    c.next();
    return make_negcond(parse_expr(c));
  }
  if (c.is_punct("(")) {
    // Either a parenthesized condition ("(a + b) == c") or a parenthesized
    // statement group ("(x = 2; f(\"e\"))"). Try the expression reading
    // first and fall back to the group.
    std::size_t saved = c.i;
    try {
      return make_cond(parse_expr(c));
    } catch (const detail::LexParseError& expr_err) {
      c.i = saved;
      try {
        c.expect_punct("(");
        StmtPtr s = parse_stmt(c);
        c.expect_punct(")");
        return s;
      } catch (const detail::LexParseError& group_err) {
        const ParseError& a = expr_err.err;
        const ParseError& b = group_err.err;
        bool group_further = b.pos.line > a.pos.line ||
                             (b.pos.line == a.pos.line && b.pos.column > a.pos.column);
        throw detail::LexParseError{group_further ? b : a};
      }
    }
  }
  return make_cond(parse_expr(c));
}

StmtPtr parse_stmt(Cursor& c) {
  std::vector<StmtPtr> parts;
  parts.push_back(parse_basic(c));
  while (c.accept_punct(";")) {
    if (!starts_basic(c)) break;  // trailing ';'
    parts.push_back(parse_basic(c));
  }
  StmtPtr s = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) {
    s = make_seq(parts[i], s);
  }
  return s;
}

Defn parse_procdef(Cursor& c) {
  if (!c.accept_keyword("proc")) {
    fail_at(c.peek().pos, "expected 'proc'", {"'proc'"});
  }
  Defn d;
  d.name = parse_ident(c);
  c.expect_punct("(");
  if (!c.is_punct(")")) {
    d.params.push_back(parse_ident(c));
    while (c.accept_punct(",")) {
      d.params.push_back(parse_ident(c));
    }
  }
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    for (std::size_t j = i + 1; j < d.params.size(); ++j) {
      if (d.params[i] == d.params[j]) {
        fail_at(c.peek().pos, "duplicate parameter '" + d.params[i] + "'");
      }
    }
  }
  c.expect_punct(")");
  c.expect_punct("{");
  d.body = parse_stmt(c);
  c.expect_punct("}");
  return d;
}

}  // namespace

ParseResult<Program> parse_program(std::string_view text) {
  try {
    std::vector<Token> toks = detail::lex(text);
    Cursor c{&toks};
    Program p;
    while (!c.at_end()) {
      SourcePos at = c.peek().pos;
      Defn d = parse_procdef(c);
      for (const Defn& prev : p.defs) {
        if (prev.name == d.name && prev.params.size() == d.params.size()) {
          fail_at(at, "duplicate definition of " + d.name + "/" +
                          std::to_string(d.params.size()));
        }
      }
      p.defs.push_back(std::move(d));
    }
    return p;
  } catch (const detail::LexParseError& e) {
    return e.err;
  }
}

ParseResult<StmtPtr> parse_goal(std::string_view text) {
  try {
    std::vector<Token> toks = detail::lex(text);
    Cursor c{&toks};
    StmtPtr s = parse_stmt(c);
    if (!c.at_end()) {
      fail_at(c.peek().pos, "unexpected trailing input", {"end of input"});
    }
    return s;
  } catch (const detail::LexParseError& e) {
    return e.err;
  }
}

ParseResult<std::vector<std::pair<std::string, Value>>> parse_state_bindings(
    std::string_view text) {
  try {
    std::vector<Token> toks = detail::lex(text);
    Cursor c{&toks};
    std::vector<std::pair<std::string, Value>> out;
    if (c.at_end()) return out;
    while (true) {
      std::string name = parse_ident(c);
      c.expect_punct("=");
      out.emplace_back(std::move(name), detail::parse_literal_value(c));
      if (!c.accept_punct(",")) break;
    }
    if (!c.at_end()) {
      fail_at(c.peek().pos, "unexpected trailing input", {"end of input"});
    }
    return out;
  } catch (const detail::LexParseError& e) {
    return e.err;
  }
}

namespace {

// Precedence levels for minimal parenthesization.
int expr_level(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Binary>) {
          switch (n.op) {
            case BinaryOp::Or: return 1;
            case BinaryOp::And: return 2;
            case BinaryOp::Eq: case BinaryOp::Ne: case BinaryOp::Lt:
            case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge:
              return 3;
            case BinaryOp::Add: case BinaryOp::Sub: return 4;
            default: return 5;
          }
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          return 6;
        } else {
          return 7;
        }
      },
      e.node);
}

const char* binop_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

void print_expr_prec(const ExprPtr& e, int min_level, std::string& out) {
  int level = expr_level(*e);
  bool parens = level < min_level;
  if (parens) out += '(';
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          out += render_value(n.value);
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          if (n.op == UnaryOp::Not) {
            out += '!';
            print_expr_prec(n.operand, 6, out);
          } else {
            // Always parenthesize so "-(1)" is not read as the literal -1.
            out += "-(";
            print_expr_prec(n.operand, 0, out);
            out += ')';
          }
        } else {
          print_expr_prec(n.lhs, level, out);
          out += ' ';
          out += binop_text(n.op);
          out += ' ';
          print_expr_prec(n.rhs, level + 1, out);
        }
      },
      e->node);
  if (parens) out += ')';
}

void print_stmt_into(const StmtPtr& s, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::True>) {
          out += 't';
        } else if constexpr (std::is_same_v<T, Stmt::Fail>) {
          if (n.code.code == kGenericFailure) {
            out += 'f';
          } else {
            out += "f(";
            out += quote_string(n.code.code);
            out += ')';
          }
        } else if constexpr (std::is_same_v<T, Stmt::Call>) {
          out += n.name;
          out += '(';
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            print_expr_prec(n.args[i], 0, out);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, Stmt::Cond>) {
          // A leading '!' would reparse as a negated condition.
          std::string text;
          print_expr_prec(n.expr, 0, text);
          bool wrap = !text.empty() && text[0] == '!';
          if (wrap) out += '(';
          out += text;
          if (wrap) out += ')';
        } else if constexpr (std::is_same_v<T, Stmt::NegCond>) {
          out += "!(";
          print_expr_prec(n.expr, 0, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          out += n.var;
          out += " = ";
          print_expr_prec(n.expr, 0, out);
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          print_stmt_into(n.first, out);
          out += "; ";
          print_stmt_into(n.second, out);
        } else {
          out += "choose(";
          for (std::size_t i = 0; i < n.alts.size(); ++i) {
            if (i) out += ", ";
            print_stmt_into(n.alts[i], out);
          }
          out += ')';
        }
      },
      s->node);
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::string out;
  print_expr_prec(e, 0, out);
  return out;
}

std::string print_stmt(const StmtPtr& s) {
  std::string out;
  print_stmt_into(s, out);
  return out;
}

std::string print_program(const Program& p) {
  std::string out;
  for (const Defn& d : p.defs) {
    out += "proc ";
    out += d.name;
    out += '(';
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      if (i) out += ", ";
      out += d.params[i];
    }
    out += ") {\n  ";
    print_stmt_into(d.body, out);
    out += "\n}\n";
  }
  return out;
}

}  // namespace chlang
