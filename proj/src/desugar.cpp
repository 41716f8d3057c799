#include "chlang/desugar.hpp"

#include <algorithm>

#include "parse_common.hpp"

namespace chlang {

using detail::Cursor;
using detail::Token;
using detail::TokKind;
using detail::fail_at;

SugarPtr make_if(ExprPtr cond, SugarPtr then_branch, SugarPtr else_branch) {
  return std::make_shared<SugarStmt>(SugarStmt{SugarStmt::If{
      std::move(cond), std::move(then_branch), std::move(else_branch)}});
}
SugarPtr make_switch(ExprPtr scrutinee,
                     std::vector<std::pair<Value, SugarPtr>> cases,
                     SugarPtr default_case) {
  return std::make_shared<SugarStmt>(SugarStmt{SugarStmt::Switch{
      std::move(scrutinee), std::move(cases), std::move(default_case)}});
}
SugarPtr make_trycatch(SugarPtr body, SugarPtr handler) {
  return std::make_shared<SugarStmt>(
      SugarStmt{SugarStmt::TryCatch{std::move(body), std::move(handler)}});
}
SugarPtr make_plain(StmtPtr s) {
  return std::make_shared<SugarStmt>(SugarStmt{SugarStmt::Plain{std::move(s)}});
}
SugarPtr make_sseq(SugarPtr first, SugarPtr second) {
  return std::make_shared<SugarStmt>(
      SugarStmt{SugarStmt::SSeq{std::move(first), std::move(second)}});
}

StmtPtr desugar(const SugarPtr& s) {
  return std::visit(
      [&](const auto& n) -> StmtPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SugarStmt::If>) {
          StmtPtr else_stmt =
              n.else_branch ? desugar(n.else_branch) : make_true();
          return make_choose({
              make_seq(make_cond(n.cond), desugar(n.then_branch)),
              make_seq(make_negcond(n.cond), else_stmt),
          });
        } else if constexpr (std::is_same_v<T, SugarStmt::Switch>) {
          std::vector<StmtPtr> alts;
          alts.reserve(n.cases.size() + 1);
          for (const auto& [label, body] : n.cases) {
            ExprPtr guard =
                make_binary(BinaryOp::Eq, n.scrutinee, make_literal(label));
            alts.push_back(make_seq(make_cond(guard), desugar(body)));
          }
          StmtPtr dflt = n.default_case ? desugar(n.default_case) : make_true();
          alts.push_back(make_seq(make_cond(make_literal(Value(true))), dflt));
          return make_choose(std::move(alts));
        } else if constexpr (std::is_same_v<T, SugarStmt::TryCatch>) {
          return make_choose({desugar(n.body), desugar(n.handler)});
        } else if constexpr (std::is_same_v<T, SugarStmt::Plain>) {
          return n.stmt;
        } else {
          return make_seq(desugar(n.first), desugar(n.second));
        }
      },
      s->node);
}

namespace {

bool is_mj_keyword(const std::string& s) {
  return detail::is_core_keyword(s) || s == "if" || s == "else" ||
         s == "switch" || s == "case" || s == "default" || s == "break" ||
         s == "try" || s == "catch";
}

SugarPtr parse_mj_stmt(Cursor& c);

SugarPtr parse_mj_block(Cursor& c) {
  c.expect_punct("{");
  std::vector<SugarPtr> stmts;
  while (!c.is_punct("}")) {
    if (c.at_end()) fail_at(c.peek().pos, "expected '}'", {"'}'"});
    stmts.push_back(parse_mj_stmt(c));
  }
  c.expect_punct("}");
  if (stmts.empty()) return make_plain(make_true());
  SugarPtr s = stmts.back();
  for (std::size_t i = stmts.size() - 1; i-- > 0;) {
    s = make_sseq(stmts[i], s);
  }
  return s;
}

// A plain (non-selection) statement followed by ';'.
SugarPtr parse_mj_plain(Cursor& c) {
  const Token& t = c.peek();
  StmtPtr s;
  if (t.kind == TokKind::Ident && t.text == "t") {
    c.next();
    s = make_true();
  } else if (t.kind == TokKind::Ident && t.text == "f") {
    c.next();
    if (c.accept_punct("(")) {
      const Token& code = c.peek();
      if (code.kind != TokKind::String) {
        fail_at(code.pos, "expected string error code", {"string"});
      }
      if (code.text.empty()) fail_at(code.pos, "error code must be non-empty");
      c.next();
      c.expect_punct(")");
      s = make_fail(code.text);
    } else {
      s = make_fail(kGenericFailure);
    }
  } else if (t.kind == TokKind::Ident && !is_mj_keyword(t.text) &&
             c.is_punct("=", 1)) {
    std::string name = c.next().text;
    c.next();  // '='
    s = make_assign(std::move(name), detail::parse_expr(c));
  } else if (t.kind == TokKind::Ident && !is_mj_keyword(t.text) &&
             c.is_punct("(", 1)) {
    std::string name = c.next().text;
    c.next();  // '('
    std::vector<ExprPtr> args;
    if (!c.is_punct(")")) {
      args.push_back(detail::parse_expr(c));
      while (c.accept_punct(",")) args.push_back(detail::parse_expr(c));
    }
    c.expect_punct(")");
    s = make_call(std::move(name), std::move(args));
  } else if (c.is_punct("!")) {
    c.next();
    s = make_negcond(detail::parse_expr(c));
  } else {
    s = make_cond(detail::parse_expr(c));
  }
  c.expect_punct(";");
  return make_plain(std::move(s));
}

Value parse_case_label(Cursor& c) {
  const Token& t = c.peek();
  // Bare identifiers are modeled as string values ("case tom" means "tom").
  if (t.kind == TokKind::Ident && t.text != "true" && t.text != "false") {
    if (is_mj_keyword(t.text)) {
      fail_at(t.pos, "'" + t.text + "' cannot be a case label");
    }
    c.next();
    return Value(t.text);
  }
  return detail::parse_literal_value(c);
}

// Statements of a case body, ending at break (consumed), at default, or at
// '}'. Fall-through onto another case is rejected.
SugarPtr parse_case_body(Cursor& c) {
  std::vector<SugarPtr> stmts;
  while (true) {
    if (c.is_ident("break")) {
      c.next();
      c.expect_punct(";");
      break;
    }
    if (c.is_punct("}") || c.is_ident("default")) {
      break;
    }
    if (c.is_ident("case")) {
      fail_at(c.peek().pos,
              "fall-through between switch cases is not allowed; add 'break'");
    }
    if (c.at_end()) fail_at(c.peek().pos, "unterminated switch body");
    stmts.push_back(parse_mj_stmt(c));
  }
  if (stmts.empty()) return make_plain(make_true());
  SugarPtr s = stmts.back();
  for (std::size_t i = stmts.size() - 1; i-- > 0;) {
    s = make_sseq(stmts[i], s);
  }
  return s;
}

SugarPtr parse_mj_stmt(Cursor& c) {
  if (c.is_ident("if")) {
    c.next();
    c.expect_punct("(");
    ExprPtr cond = detail::parse_expr(c);
    c.expect_punct(")");
    SugarPtr then_branch = parse_mj_block(c);
    SugarPtr else_branch;
    if (c.accept_keyword("else")) {
      if (c.is_ident("if")) {
        else_branch = parse_mj_stmt(c);
      } else {
        else_branch = parse_mj_block(c);
      }
    }
    return make_if(std::move(cond), std::move(then_branch),
                   std::move(else_branch));
  }
  if (c.is_ident("switch")) {
    c.next();
    c.expect_punct("(");
    ExprPtr scrutinee = detail::parse_expr(c);
    c.expect_punct(")");
    c.expect_punct("{");
    std::vector<std::pair<Value, SugarPtr>> cases;
    SugarPtr default_case;
    while (c.is_ident("case")) {
      SourcePos at = c.peek().pos;
      c.next();
      Value label = parse_case_label(c);
      c.expect_punct(":");
      for (const auto& [prev, body] : cases) {
        if (prev == label) fail_at(at, "duplicate case label");
      }
      cases.emplace_back(std::move(label), parse_case_body(c));
    }
    if (c.accept_keyword("default")) {
      c.expect_punct(":");
      default_case = parse_case_body(c);
    }
    c.expect_punct("}");
    if (cases.empty() && !default_case) {
      fail_at(c.peek().pos, "switch requires at least one case or default");
    }
    return make_switch(std::move(scrutinee), std::move(cases),
                       std::move(default_case));
  }
  if (c.is_ident("try")) {
    c.next();
    SugarPtr body = parse_mj_block(c);
    if (!c.accept_keyword("catch")) {
      fail_at(c.peek().pos, "expected 'catch'", {"'catch'"});
    }
    SugarPtr handler = parse_mj_block(c);
    return make_trycatch(std::move(body), std::move(handler));
  }
  return parse_mj_plain(c);
}

SugarDefn parse_mj_proc(Cursor& c) {
  c.accept_keyword("proc");  // optional, for symmetry with the core syntax
  SugarDefn d;
  const Token& t = c.peek();
  if (t.kind != TokKind::Ident || is_mj_keyword(t.text)) {
    fail_at(t.pos, "expected procedure name", {"identifier"});
  }
  d.name = c.next().text;
  c.expect_punct("(");
  if (!c.is_punct(")")) {
    d.params.push_back(detail::parse_ident(c));
    while (c.accept_punct(",")) d.params.push_back(detail::parse_ident(c));
  }
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    for (std::size_t j = i + 1; j < d.params.size(); ++j) {
      if (d.params[i] == d.params[j]) {
        fail_at(c.peek().pos, "duplicate parameter '" + d.params[i] + "'");
      }
    }
  }
  c.expect_punct(")");
  d.body = parse_mj_block(c);
  return d;
}

}  // namespace

ParseResult<SugarPtr> parse_sugar(std::string_view text) {
  try {
    std::vector<Token> toks = detail::lex(text);
    Cursor c{&toks};
    SugarPtr s = parse_mj_stmt(c);
    if (!c.at_end()) {
      fail_at(c.peek().pos, "unexpected trailing input", {"end of input"});
    }
    return s;
  } catch (const detail::LexParseError& e) {
    return e.err;
  }
}

ParseResult<std::vector<SugarDefn>> parse_sugar_program(std::string_view text) {
  try {
    std::vector<Token> toks = detail::lex(text);
    Cursor c{&toks};
    std::vector<SugarDefn> defs;
    while (!c.at_end()) {
      SourcePos at = c.peek().pos;
      SugarDefn d = parse_mj_proc(c);
      for (const SugarDefn& prev : defs) {
        if (prev.name == d.name && prev.params.size() == d.params.size()) {
          fail_at(at, "duplicate definition of " + d.name + "/" +
                          std::to_string(d.params.size()));
        }
      }
      defs.push_back(std::move(d));
    }
    return defs;
  } catch (const detail::LexParseError& e) {
    return e.err;
  }
}

Program desugar_program(const std::vector<SugarDefn>& defs) {
  Program p;
  p.defs.reserve(defs.size());
  for (const SugarDefn& d : defs) {
    p.defs.push_back(Defn{d.name, d.params, desugar(d.body)});
  }
  return p;
}

}  // namespace chlang
