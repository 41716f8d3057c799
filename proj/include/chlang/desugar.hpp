#pragma once

#include <memory>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chlang/ast.hpp"
#include "chlang/parser.hpp"

namespace chlang {

struct SugarStmt;
using SugarPtr = std::shared_ptr<const SugarStmt>;

// Traditional selection constructs before lowering to choose form.
struct SugarStmt {
  struct If {
    ExprPtr cond;
    SugarPtr then_branch;
    SugarPtr else_branch;  // may be null
  };
  struct Switch {
    ExprPtr scrutinee;
    std::vector<std::pair<Value, SugarPtr>> cases;  // labels pairwise distinct
    SugarPtr default_case;                          // may be null
  };
  struct TryCatch {
    SugarPtr body;
    SugarPtr handler;
  };
  struct Plain {
    StmtPtr stmt;
  };
  struct SSeq {
    SugarPtr first;
    SugarPtr second;
  };

  std::variant<If, Switch, TryCatch, Plain, SSeq> node;
};

SugarPtr make_if(ExprPtr cond, SugarPtr then_branch, SugarPtr else_branch);
SugarPtr make_switch(ExprPtr scrutinee,
                     std::vector<std::pair<Value, SugarPtr>> cases,
                     SugarPtr default_case);
SugarPtr make_trycatch(SugarPtr body, SugarPtr handler);
SugarPtr make_plain(StmtPtr s);
SugarPtr make_sseq(SugarPtr first, SugarPtr second);

// Lowers if-then-else, switch, and try-catch to choose form:
//   if (c) S else T      -> choose(c; S, !c; T)       (missing else: T = t)
//   switch/case/default  -> choose(e == v1; S1, ..., true; D)
//   try B catch H        -> choose(B, H)
StmtPtr desugar(const SugarPtr& s);

struct SugarDefn {
  std::string name;
  std::vector<std::string> params;
  SugarPtr body;
};

// Parses one statement in the mini-Java surface syntax (if/else,
// switch/case/default/break, try/catch, plus the plain statements).
ParseResult<SugarPtr> parse_sugar(std::string_view text);

// Parses a whole mini-Java file: procedure definitions with block bodies.
ParseResult<std::vector<SugarDefn>> parse_sugar_program(std::string_view text);

// Lowers every definition body; the resulting program has an empty state.
Program desugar_program(const std::vector<SugarDefn>& defs);

}  // namespace chlang
