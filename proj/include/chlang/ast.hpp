#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chlang/state.hpp"
#include "chlang/value.hpp"

namespace chlang {

enum class UnaryOp { Neg, Not };
enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Side-effect-free expression tree: no calls, no assignments.
struct Expr {
  struct Literal {
    Value value;
  };
  struct Var {
    std::string name;
  };
  struct Unary {
    UnaryOp op;
    ExprPtr operand;
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };

  std::variant<Literal, Var, Unary, Binary> node;
};

ExprPtr make_literal(Value v);
ExprPtr make_var(std::string name);
ExprPtr make_unary(UnaryOp op, ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

// Failure payload. Bare failure carries the reserved code "f".
// Engine-generated codes: f, unbound_variable, type_error, division_by_zero,
// no_matching_procedure, depth_exceeded.
struct ErrorCode {
  std::string code;

  friend bool operator==(const ErrorCode&, const ErrorCode&) = default;
};

inline const char* kGenericFailure = "f";
inline const char* kUnboundVariable = "unbound_variable";
inline const char* kTypeError = "type_error";
inline const char* kDivisionByZero = "division_by_zero";
inline const char* kNoMatchingProcedure = "no_matching_procedure";
inline const char* kDepthExceeded = "depth_exceeded";

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

// Statement AST, one constructor per grammar production.
struct Stmt {
  struct True {};
  struct Fail {
    ErrorCode code;
  };
  struct Call {
    std::string name;
    std::vector<ExprPtr> args;
  };
  struct Cond {
    ExprPtr expr;
  };
  struct NegCond {
    ExprPtr expr;
  };
  struct Assign {
    std::string var;
    ExprPtr expr;
  };
  struct Seq {
    StmtPtr first;
    StmtPtr second;
  };
  struct Choose {
    std::vector<StmtPtr> alts;  // length >= 1
  };

  std::variant<True, Fail, Call, Cond, NegCond, Assign, Seq, Choose> node;
};

StmtPtr make_true();
StmtPtr make_fail(std::string code);
StmtPtr make_call(std::string name, std::vector<ExprPtr> args);
StmtPtr make_cond(ExprPtr e);
StmtPtr make_negcond(ExprPtr e);
StmtPtr make_assign(std::string var, ExprPtr e);
StmtPtr make_seq(StmtPtr first, StmtPtr second);
StmtPtr make_choose(std::vector<StmtPtr> alts);

// Procedure definition: name, pairwise-distinct parameters, body.
// Non-parameter variables in the body refer to the global state.
struct Defn {
  std::string name;
  std::vector<std::string> params;
  StmtPtr body;
};

// A definition set together with the machine state.
// (name, arity) pairs in defs are unique.
struct Program {
  std::vector<Defn> defs;
  State state;
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool stmt_equal(const StmtPtr& a, const StmtPtr& b);

// All variable names occurring in s: in expressions, assignment targets,
// and call arguments.
std::set<std::string> free_vars(const StmtPtr& s);
void collect_expr_vars(const ExprPtr& e, std::set<std::string>& out);

// Result of executing a statement. Success keeps the updated state (the
// engine mutates the state in place); failure carries the ordered error
// code list. `aborted` marks a depth_exceeded failure, which stops the
// whole run instead of triggering sibling alternatives.
struct Outcome {
  bool success = true;
  std::vector<ErrorCode> codes;  // non-empty iff !success
  bool aborted = false;

  static Outcome ok() { return Outcome{}; }
  static Outcome fail(std::vector<ErrorCode> cs, bool abort = false) {
    return Outcome{false, std::move(cs), abort};
  }
  static Outcome fail(std::string code) {
    return Outcome{false, {ErrorCode{std::move(code)}}, false};
  }
};

}  // namespace chlang
