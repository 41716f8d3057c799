#include <doctest.h>

#include "chlang/parser.hpp"
#include "gen.hpp"

using namespace chlang;

namespace {

Program must_parse(std::string_view text) {
  auto r = parse_program(text);
  if (auto* e = std::get_if<ParseError>(&r)) {
    FAIL("parse error at " << e->pos.line << ":" << e->pos.column << ": " << e->message);
  }
  return std::move(std::get<Program>(r));
}

StmtPtr must_goal(std::string_view text) {
  auto r = parse_goal(text);
  if (auto* e = std::get_if<ParseError>(&r)) {
    FAIL("parse error at " << e->pos.line << ":" << e->pos.column << ": " << e->message);
  }
  return std::get<StmtPtr>(r);
}

const char* kGetAgeSource = R"(
proc getAge(emp) {
  choose(
    emp == "tom"; age = 31,
    emp == "kim"; age = 40,
    emp == "sue"; age = 22,
    true; age = 0
  );
}
)";

}  // namespace

TEST_CASE("smallest program") {
  Program p = must_parse("proc main() { t; }");
  REQUIRE(p.defs.size() == 1);
  CHECK(p.defs[0].name == "main");
  CHECK(p.defs[0].params.empty());
  CHECK(stmt_equal(p.defs[0].body, make_true()));
  CHECK(p.state.bindings().empty());
}

TEST_CASE("getAge surface program") {
  Program p = must_parse(kGetAgeSource);
  REQUIRE(p.defs.size() == 1);
  CHECK(p.defs[0].name == "getAge");
  REQUIRE(p.defs[0].params.size() == 1);

  const auto* choose = std::get_if<Stmt::Choose>(&p.defs[0].body->node);
  REQUIRE(choose != nullptr);
  REQUIRE(choose->alts.size() == 4);
  for (const auto& alt : choose->alts) {
    CHECK(std::holds_alternative<Stmt::Seq>(alt->node));
  }
}

TEST_CASE("empty choose is rejected") {
  auto r = parse_program("proc p() { choose(); }");
  REQUIRE(std::holds_alternative<ParseError>(r));
  CHECK(std::get<ParseError>(r).message ==
        "choose requires at least one alternative");
}

TEST_CASE("duplicate (name, arity) is a parse error") {
  auto r = parse_program("proc p(x) { t } proc p(y) { t }");
  REQUIRE(std::holds_alternative<ParseError>(r));
  // Same name at a different arity is fine.
  CHECK(std::holds_alternative<Program>(
      parse_program("proc p(x) { t } proc p(x, y) { t }")));
}

TEST_CASE("parse_goal direct productions") {
  StmtPtr call = must_goal("getAge(\"tom\")");
  CHECK(stmt_equal(call, make_call("getAge", {make_literal(Value("tom"))})));

  StmtPtr seq = must_goal("x = 1; y = 2");
  CHECK(stmt_equal(seq, make_seq(make_assign("x", make_literal(Value(1))),
                                 make_assign("y", make_literal(Value(2))))));

  StmtPtr ch = must_goal("choose(f(\"a\"), t)");
  CHECK(stmt_equal(ch, make_choose({make_fail("a"), make_true()})));

  CHECK(stmt_equal(must_goal("f"), make_fail("f")));
  CHECK(stmt_equal(must_goal("!(x == 1)"),
                   make_negcond(make_binary(BinaryOp::Eq, make_var("x"),
                                            make_literal(Value(1))))));
}

TEST_CASE("print_stmt canonical forms") {
  CHECK(print_stmt(make_true()) == "t");
  CHECK(print_stmt(make_fail("f")) == "f");
  CHECK(print_stmt(make_fail("net")) == "f(\"net\")");
  CHECK(print_stmt(make_choose(
            {make_cond(make_binary(BinaryOp::Eq, make_var("x"),
                                   make_literal(Value(1)))),
             make_true()})) == "choose(x == 1, t)");
  CHECK(print_stmt(make_seq(make_assign("x", make_literal(Value(1))),
                            make_assign("y", make_var("x")))) ==
        "x = 1; y = x");
}

TEST_CASE("expression precedence round trip") {
  // a + b * c stays flat; (a + b) * c keeps its parens.
  StmtPtr s1 = must_goal("x = a + b * c");
  CHECK(print_stmt(s1) == "x = a + b * c");
  StmtPtr s2 = must_goal("x = (a + b) * c");
  CHECK(print_stmt(s2) == "x = (a + b) * c");
  StmtPtr s3 = must_goal("a < 1 && b > 2 || !c");
  CHECK(stmt_equal(must_goal(print_stmt(s3)), s3));
}

TEST_CASE("trailing semicolon and comments are tolerated") {
  Program p = must_parse("proc m() {\n  x = 1; // set x\n  y = 2;\n}");
  CHECK(stmt_equal(p.defs[0].body,
                   make_seq(make_assign("x", make_literal(Value(1))),
                            make_assign("y", make_literal(Value(2))))));
}

TEST_CASE("string escapes") {
  StmtPtr s = must_goal("x = \"a\\\"b\\\\c\\nd\"");
  const auto& assign = std::get<Stmt::Assign>(s->node);
  const auto& lit = std::get<Expr::Literal>(assign.expr->node);
  CHECK(lit.value.as_string() == "a\"b\\c\nd");
  CHECK(stmt_equal(must_goal(print_stmt(s)), s));
}

TEST_CASE("error positions point at the offending token") {
  auto r = parse_program("proc p() {\n  choose(;\n}");
  REQUIRE(std::holds_alternative<ParseError>(r));
  const ParseError& e = std::get<ParseError>(r);
  CHECK(e.pos.line == 2);
  CHECK(e.pos.column == 10);

  auto r2 = parse_goal("x = ");
  REQUIRE(std::holds_alternative<ParseError>(r2));
  CHECK_FALSE(std::get<ParseError>(r2).message.empty());
}

TEST_CASE("reserved words cannot be identifiers") {
  CHECK(std::holds_alternative<ParseError>(parse_goal("choose = 1")));
  CHECK(std::holds_alternative<ParseError>(parse_program("proc t() { t }")));
}

TEST_CASE("fuzz: parse-print round trip is the identity") {
  gen::Gen g(7);
  for (int i = 0; i < 2000; ++i) {
    StmtPtr s = g.stmt(4);
    std::string text = print_stmt(s);
    auto r = parse_goal(text);
    if (auto* e = std::get_if<ParseError>(&r)) {
      FAIL("round trip failed on: " << text << " (" << e->message << ")");
    }
    if (!stmt_equal(std::get<StmtPtr>(r), s)) {
      FAIL("round trip changed AST for: " << text);
    }
  }
}

TEST_CASE("parse_state_bindings") {
  auto r = parse_state_bindings("emp=\"tom\",n=3,ok=true,neg=-4");
  REQUIRE(std::holds_alternative<
          std::vector<std::pair<std::string, Value>>>(r));
  auto& v = std::get<std::vector<std::pair<std::string, Value>>>(r);
  REQUIRE(v.size() == 4);
  CHECK(v[0].second == Value("tom"));
  CHECK(v[1].second == Value(3));
  CHECK(v[2].second == Value(true));
  CHECK(v[3].second == Value(-4));

  CHECK(std::holds_alternative<ParseError>(parse_state_bindings("x=")));
  CHECK(std::holds_alternative<ParseError>(parse_state_bindings("x=1,")));
}
