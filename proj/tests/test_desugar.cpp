#include <doctest.h>

#include "chlang/desugar.hpp"
#include "chlang/engine.hpp"
#include "chlang/parser.hpp"
#include "gen.hpp"
#include "reference_eval.hpp"

using namespace chlang;

namespace {

const char* kGetAgeMj = R"(
getAge(emp) {
  switch (emp) {
    case tom: age = 31; break;
    case kim: age = 40; break;
    case sue: age = 22; break;
    default: age = 0;
  }
}
)";

const char* kGetAgeCh = R"(
proc getAge(emp) {
  choose(
    emp == "tom"; age = 31,
    emp == "kim"; age = 40,
    emp == "sue"; age = 22,
    true; age = 0
  );
}
)";

SugarPtr must_sugar(std::string_view text) {
  auto r = parse_sugar(text);
  if (auto* e = std::get_if<ParseError>(&r)) {
    FAIL("parse error at " << e->pos.line << ":" << e->pos.column << ": "
                           << e->message);
  }
  return std::get<SugarPtr>(r);
}

}  // namespace

TEST_CASE("if-then-else lowers to guarded choose") {
  auto cond = make_binary(BinaryOp::Eq, make_var("x"), make_literal(Value(0)));
  auto then_b = make_plain(make_assign("y", make_literal(Value(1))));

  SUBCASE("with else") {
    auto else_b = make_plain(make_assign("y", make_literal(Value(2))));
    StmtPtr lowered = desugar(make_if(cond, then_b, else_b));
    auto expected = parse_goal("choose(x == 0; y = 1, !(x == 0); y = 2)");
    CHECK(stmt_equal(lowered, std::get<StmtPtr>(expected)));
  }
  SUBCASE("absent else becomes t") {
    StmtPtr lowered = desugar(make_if(cond, then_b, nullptr));
    auto expected = parse_goal("choose(x == 0; y = 1, !(x == 0); t)");
    CHECK(stmt_equal(lowered, std::get<StmtPtr>(expected)));
  }
}

TEST_CASE("try-catch lowers to a two-alternative choose") {
  StmtPtr lowered = desugar(make_trycatch(
      make_plain(make_fail("boom")),
      make_plain(make_assign("y", make_literal(Value(9))))));
  auto expected = parse_goal("choose(f(\"boom\"), y = 9)");
  CHECK(stmt_equal(lowered, std::get<StmtPtr>(expected)));

  const auto* ch = std::get_if<Stmt::Choose>(&lowered->node);
  REQUIRE(ch != nullptr);
  CHECK(ch->alts.size() == 2);
}

TEST_CASE("plain statements pass through unchanged") {
  gen::Gen g(5);
  for (int i = 0; i < 100; ++i) {
    StmtPtr s = g.stmt(3);
    CHECK(desugar(make_plain(s)) == s);
  }
}

TEST_CASE("getAge switch desugars to the getAge choose") {
  auto parsed = parse_sugar_program(kGetAgeMj);
  REQUIRE(std::holds_alternative<std::vector<SugarDefn>>(parsed));
  Program lowered =
      desugar_program(std::get<std::vector<SugarDefn>>(parsed));
  REQUIRE(lowered.defs.size() == 1);
  CHECK(lowered.defs[0].name == "getAge");

  auto handwritten = parse_program(kGetAgeCh);
  REQUIRE(std::holds_alternative<Program>(handwritten));
  CHECK(stmt_equal(lowered.defs[0].body,
                   std::get<Program>(handwritten).defs[0].body));
}

TEST_CASE("getAge ages match for every input") {
  auto parsed = parse_sugar_program(kGetAgeMj);
  REQUIRE(std::holds_alternative<std::vector<SugarDefn>>(parsed));
  Program lowered = desugar_program(std::get<std::vector<SugarDefn>>(parsed));
  struct Row {
    const char* emp;
    int age;
  } rows[] = {{"tom", 31}, {"kim", 40}, {"sue", 22}, {"zoe", 0}};
  ExecConfig cfg;
  for (const Row& row : rows) {
    Program p = lowered;
    auto goal = parse_goal(std::string("getAge(\"") + row.emp + "\")");
    REQUIRE(exec(p, std::get<StmtPtr>(goal), cfg).success);
    CHECK(*p.state.get("age") == Value(row.age));
  }
}

TEST_CASE("parse_sugar statements") {
  SugarPtr ifelse = must_sugar("if (x > 0) { y = 1; } else { y = 2; }");
  CHECK(std::holds_alternative<SugarStmt::If>(ifelse->node));

  SugarPtr nested = must_sugar(
      "if (x > 0) { y = 1; } else if (x < 0) { y = 2; } else { y = 3; }");
  const auto& outer = std::get<SugarStmt::If>(nested->node);
  REQUIRE(outer.else_branch != nullptr);
  CHECK(std::holds_alternative<SugarStmt::If>(outer.else_branch->node));

  SugarPtr tc = must_sugar("try { send(m); } catch { log(m); }");
  CHECK(std::holds_alternative<SugarStmt::TryCatch>(tc->node));
}

TEST_CASE("switch fall-through is rejected") {
  auto r = parse_sugar("switch (e) { case 1: a = 1; case 2: a = 2; }");
  REQUIRE(std::holds_alternative<ParseError>(r));
  CHECK(std::get<ParseError>(r).message.find("fall-through") !=
        std::string::npos);
}

TEST_CASE("duplicate case labels are rejected") {
  auto r = parse_sugar("switch (e) { case 1: a = 1; break; case 1: a = 2; }");
  REQUIRE(std::holds_alternative<ParseError>(r));
}

TEST_CASE("last case may omit break") {
  SugarPtr s = must_sugar("switch (e) { case 1: a = 1; break; case 2: a = 2; }");
  const auto& sw = std::get<SugarStmt::Switch>(s->node);
  CHECK(sw.cases.size() == 2);
  CHECK(sw.default_case == nullptr);
}

TEST_CASE("nested try-catch flattens to n-ary handling") {
  // try { try { B } catch { H1 } } catch { H2 } gives choose(choose(B,H1),H2),
  // which behaves like trying B, H1, H2 in order.
  StmtPtr lowered = desugar(make_trycatch(
      make_trycatch(make_plain(make_fail("b")), make_plain(make_fail("h1"))),
      make_plain(make_assign("done", make_literal(Value(1))))));
  Program p;
  ExecConfig cfg;
  CHECK(exec(p, lowered, cfg).success);
  CHECK(*p.state.get("done") == Value(1));
}

TEST_CASE("fuzz: if-then-else matches a direct conditional oracle") {
  gen::Gen g(31);
  ExecConfig cfg;
  std::vector<std::string> bound = {"a", "b", "c"};
  for (int i = 0; i < 500; ++i) {
    ExprPtr cond = g.bool_expr(bound, 2);
    StmtPtr then_s = g.stmt(3);
    StmtPtr else_s = g.stmt(3);

    State init;
    for (const auto& name : bound) init.set(name, Value(g.pick(10)));

    Program p;
    p.state = init;
    StmtPtr lowered =
        desugar(make_if(cond, make_plain(then_s), make_plain(else_s)));
    Outcome actual = exec(p, lowered, cfg);

    // Direct conditional oracle on the reference evaluator.
    refeval::Env env(init.bindings().begin(), init.bindings().end());
    std::string err;
    auto cv = refeval::eval(env, cond, err);
    REQUIRE(cv.has_value());  // generator promises error-free conds
    REQUIRE(cv->is_bool());
    refeval::Result expected =
        refeval::exec({}, env, cv->as_bool() ? then_s : else_s, 0, cfg.max_depth);
    // A native selection statement in this machine also gets machine
    // rollback on failure, so the at-failure state is the entry state.
    if (!expected.success) expected.env = env;

    CHECK(actual.success == expected.success);
    CHECK(p.state.bindings() == expected.env);
  }
}
