#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "chlang/ast.hpp"

namespace chlang {

// One derivation step. Every enter is matched by exactly one exit at the
// same depth. Inside a choose, each alternative attempt is wrapped in an
// extra rule-9 enter/exit pair one level below the choose's own pair.
struct TraceEvent {
  enum class Kind { Enter, Exit };
  Kind kind;
  int rule;  // 1..9
  std::string stmt;
  int depth;
  std::optional<std::string> outcome;  // "success" | "failure"; exit only
};

// The sink sees the machine state as of the event, so tests can check the
// rollback contract at alternative boundaries.
using TraceSink = std::function<void(const TraceEvent&, const State&)>;

struct ExecConfig {
  int max_depth = 10000;  // call/choose nesting budget
  TraceSink trace_sink;
};

using EvalResult = std::variant<Value, ErrorCode>;

// Strict evaluation except && and ||, which short-circuit.
EvalResult eval_expr(const State& state, const ExprPtr& e);

// Substitutes values for variables throughout s (expressions and call
// arguments). Assignment targets keep their names.
StmtPtr substitute(const StmtPtr& s, const std::map<std::string, Value>& subst);

// Executes g against program.state, mutating it in place. On success the
// state holds the updates; on failure it holds the at-failure state (no
// top-level rollback). steps, when given, counts rule applications.
Outcome exec(Program& program, const StmtPtr& g, const ExecConfig& cfg,
             std::uint64_t* steps = nullptr);

struct RunResult {
  Outcome outcome;
  std::uint64_t steps = 0;
};

// Top-level driver; the final state is left in program.state.
RunResult run(Program& program, const StmtPtr& goal, const ExecConfig& cfg);

}  // namespace chlang
