#include "chlang/engine.hpp"

#include "chlang/parser.hpp"

namespace chlang {

namespace {

EvalResult type_error() { return ErrorCode{kTypeError}; }

EvalResult eval_binary(BinaryOp op, const Value& l, const Value& r) {
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Mul: {
      if (!l.is_int() || !r.is_int()) return type_error();
      std::int64_t out;
      bool overflow;
      if (op == BinaryOp::Add) {
        overflow = __builtin_add_overflow(l.as_int(), r.as_int(), &out);
      } else if (op == BinaryOp::Sub) {
        overflow = __builtin_sub_overflow(l.as_int(), r.as_int(), &out);
      } else {
        overflow = __builtin_mul_overflow(l.as_int(), r.as_int(), &out);
      }
      if (overflow) return type_error();
      return Value(out);
    }
    case BinaryOp::Div:
    case BinaryOp::Mod: {
      if (!l.is_int() || !r.is_int()) return type_error();
      if (r.as_int() == 0) return EvalResult{ErrorCode{kDivisionByZero}};
      if (l.as_int() == INT64_MIN && r.as_int() == -1) return type_error();
      return Value(op == BinaryOp::Div ? l.as_int() / r.as_int()
                                       : l.as_int() % r.as_int());
    }
    case BinaryOp::Eq:
    case BinaryOp::Ne: {
      if (l.data.index() != r.data.index()) return type_error();
      bool eq = l == r;
      return Value(op == BinaryOp::Eq ? eq : !eq);
    }
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: {
      int cmp;
      if (l.is_int() && r.is_int()) {
        cmp = l.as_int() < r.as_int() ? -1 : (l.as_int() > r.as_int() ? 1 : 0);
      } else if (l.is_string() && r.is_string()) {
        cmp = l.as_string().compare(r.as_string());
        cmp = cmp < 0 ? -1 : (cmp > 0 ? 1 : 0);
      } else {
        return type_error();  // no ordering on booleans or mixed kinds
      }
      switch (op) {
        case BinaryOp::Lt: return Value(cmp < 0);
        case BinaryOp::Le: return Value(cmp <= 0);
        case BinaryOp::Gt: return Value(cmp > 0);
        default: return Value(cmp >= 0);
      }
    }
    default:
      return type_error();  // And/Or handled by the caller
  }
}

}  // namespace

EvalResult eval_expr(const State& state, const ExprPtr& e) {
  return std::visit(
      [&](const auto& n) -> EvalResult {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          const Value* v = state.get(n.name);
          if (!v) return ErrorCode{kUnboundVariable};
          return *v;
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          EvalResult r = eval_expr(state, n.operand);
          if (std::holds_alternative<ErrorCode>(r)) return r;
          const Value& v = std::get<Value>(r);
          if (n.op == UnaryOp::Not) {
            if (!v.is_bool()) return type_error();
            return Value(!v.as_bool());
          }
          if (!v.is_int()) return type_error();
          if (v.as_int() == INT64_MIN) return type_error();
          return Value(-v.as_int());
        } else {
          if (n.op == BinaryOp::And || n.op == BinaryOp::Or) {
            EvalResult lr = eval_expr(state, n.lhs);
            if (std::holds_alternative<ErrorCode>(lr)) return lr;
            const Value& l = std::get<Value>(lr);
            if (!l.is_bool()) return type_error();
            if (n.op == BinaryOp::And && !l.as_bool()) return Value(false);
            if (n.op == BinaryOp::Or && l.as_bool()) return Value(true);
            EvalResult rr = eval_expr(state, n.rhs);
            if (std::holds_alternative<ErrorCode>(rr)) return rr;
            const Value& r = std::get<Value>(rr);
            if (!r.is_bool()) return type_error();
            return r;
          }
          EvalResult lr = eval_expr(state, n.lhs);
          if (std::holds_alternative<ErrorCode>(lr)) return lr;
          EvalResult rr = eval_expr(state, n.rhs);
          if (std::holds_alternative<ErrorCode>(rr)) return rr;
          return eval_binary(n.op, std::get<Value>(lr), std::get<Value>(rr));
        }
      },
      e->node);
}

namespace {

ExprPtr substitute_expr(const ExprPtr& e,
                        const std::map<std::string, Value>& subst) {
  return std::visit(
      [&](const auto& n) -> ExprPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          return e;
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          auto it = subst.find(n.name);
          if (it == subst.end()) return e;
          return make_literal(it->second);
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          return make_unary(n.op, substitute_expr(n.operand, subst));
        } else {
          return make_binary(n.op, substitute_expr(n.lhs, subst),
                             substitute_expr(n.rhs, subst));
        }
      },
      e->node);
}

}  // namespace

StmtPtr substitute(const StmtPtr& s, const std::map<std::string, Value>& subst) {
  return std::visit(
      [&](const auto& n) -> StmtPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::True> ||
                      std::is_same_v<T, Stmt::Fail>) {
          return s;
        } else if constexpr (std::is_same_v<T, Stmt::Call>) {
          std::vector<ExprPtr> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) args.push_back(substitute_expr(a, subst));
          return make_call(n.name, std::move(args));
        } else if constexpr (std::is_same_v<T, Stmt::Cond>) {
          return make_cond(substitute_expr(n.expr, subst));
        } else if constexpr (std::is_same_v<T, Stmt::NegCond>) {
          return make_negcond(substitute_expr(n.expr, subst));
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          return make_assign(n.var, substitute_expr(n.expr, subst));
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          return make_seq(substitute(n.first, subst), substitute(n.second, subst));
        } else {
          std::vector<StmtPtr> alts;
          alts.reserve(n.alts.size());
          for (const auto& a : n.alts) alts.push_back(substitute(a, subst));
          return make_choose(std::move(alts));
        }
      },
      s->node);
}

namespace {

struct Ctx {
  Program& prog;
  const ExecConfig& cfg;
  std::uint64_t steps = 0;
  int nesting = 0;      // call/choose depth against cfg.max_depth
  int trace_depth = 0;  // TraceEvent nesting
};

class TraceScope {
 public:
  TraceScope(Ctx& ctx, int rule, const StmtPtr& stmt) : ctx_(ctx), rule_(rule) {
    ctx_.steps++;
    if (ctx_.cfg.trace_sink) {
      text_ = print_stmt(stmt);
      emit(TraceEvent::Kind::Enter, std::nullopt);
    }
    ctx_.trace_depth++;
  }
  // Attempt wrapper variant with a precomputed statement text.
  TraceScope(Ctx& ctx, int rule, std::string text, bool count_step)
      : ctx_(ctx), rule_(rule), text_(std::move(text)) {
    if (count_step) ctx_.steps++;
    if (ctx_.cfg.trace_sink) emit(TraceEvent::Kind::Enter, std::nullopt);
    ctx_.trace_depth++;
  }
  ~TraceScope() {
    ctx_.trace_depth--;
    if (ctx_.cfg.trace_sink) {
      emit(TraceEvent::Kind::Exit, outcome_ ? std::optional<std::string>(
                                                  *outcome_ ? "success" : "failure")
                                            : std::optional<std::string>("failure"));
    }
  }
  void finish(bool success) { outcome_ = success; }

 private:
  void emit(TraceEvent::Kind kind, std::optional<std::string> outcome) {
    TraceEvent ev{kind, rule_, text_, ctx_.trace_depth, std::move(outcome)};
    ctx_.cfg.trace_sink(ev, ctx_.prog.state);
  }
  Ctx& ctx_;
  int rule_;
  std::string text_;
  std::optional<bool> outcome_;
};

Outcome exec_stmt(Ctx& ctx, const StmtPtr& g);

Outcome exec_call(Ctx& ctx, const Stmt::Call& call, const StmtPtr& g) {
  if (++ctx.nesting > ctx.cfg.max_depth) {
    --ctx.nesting;
    return Outcome::fail({ErrorCode{kDepthExceeded}}, /*abort=*/true);
  }
  struct NestGuard {
    int& n;
    ~NestGuard() { --n; }
  } guard{ctx.nesting};

  TraceScope scope(ctx, 3, g);

  // Arguments are evaluated left-to-right before definition search.
  std::vector<Value> arg_values;
  arg_values.reserve(call.args.size());
  for (const auto& a : call.args) {
    EvalResult r = eval_expr(ctx.prog.state, a);
    if (const ErrorCode* err = std::get_if<ErrorCode>(&r)) {
      scope.finish(false);
      return Outcome::fail({*err});
    }
    arg_values.push_back(std::move(std::get<Value>(r)));
  }

  std::vector<const Defn*> candidates;
  for (const Defn& d : ctx.prog.defs) {
    if (d.name == call.name && d.params.size() == call.args.size()) {
      candidates.push_back(&d);
    }
  }
  if (candidates.empty()) {
    scope.finish(false);
    return Outcome::fail({ErrorCode{kNoMatchingProcedure}});
  }

  std::vector<ErrorCode> accumulated;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Defn& d = *candidates[i];
    std::map<std::string, Value> subst;
    for (std::size_t k = 0; k < d.params.size(); ++k) {
      subst.emplace(d.params[k], arg_values[k]);
    }
    StmtPtr body;
    {
      // Argument passing instantiates the definition.
      TraceScope passing(ctx, 2, g);
      body = substitute(d.body, subst);
      passing.finish(true);
    }
    bool last = i + 1 == candidates.size();
    TraceScope matched(ctx, 1, body);
    Outcome out;
    if (last) {
      // No rollback after the final candidate: the at-failure state keeps
      // partial updates, as at top level.
      out = exec_stmt(ctx, body);
    } else {
      TxToken tok = ctx.prog.state.tx_begin();
      out = exec_stmt(ctx, body);
      if (out.success || out.aborted) {
        ctx.prog.state.tx_commit(tok);
      } else {
        ctx.prog.state.tx_restore(tok);
      }
    }
    matched.finish(out.success);
    if (out.success || out.aborted) {
      scope.finish(out.success);
      return out;
    }
    accumulated.insert(accumulated.end(), out.codes.begin(), out.codes.end());
  }
  scope.finish(false);
  return Outcome::fail(std::move(accumulated));
}

Outcome exec_choose(Ctx& ctx, const Stmt::Choose& choose, const StmtPtr& g) {
  if (++ctx.nesting > ctx.cfg.max_depth) {
    --ctx.nesting;
    return Outcome::fail({ErrorCode{kDepthExceeded}}, /*abort=*/true);
  }
  struct NestGuard {
    int& n;
    ~NestGuard() { --n; }
  } guard{ctx.nesting};

  TraceScope scope(ctx, 9, g);
  std::vector<ErrorCode> accumulated;
  for (const StmtPtr& alt : choose.alts) {
    TraceScope attempt(ctx, 9,
                       ctx.cfg.trace_sink ? print_stmt(alt) : std::string(),
                       /*count_step=*/false);
    TxToken tok = ctx.prog.state.tx_begin();
    Outcome out = exec_stmt(ctx, alt);
    if (out.success) {
      ctx.prog.state.tx_commit(tok);
      attempt.finish(true);
      scope.finish(true);
      return out;
    }
    if (out.aborted) {
      // depth_exceeded aborts the whole run: keep the state as-is and do
      // not try further alternatives.
      ctx.prog.state.tx_commit(tok);
      attempt.finish(false);
      scope.finish(false);
      return out;
    }
    accumulated.insert(accumulated.end(), out.codes.begin(), out.codes.end());
    ctx.prog.state.tx_restore(tok);
    attempt.finish(false);
  }
  scope.finish(false);
  return Outcome::fail(std::move(accumulated));
}

Outcome exec_stmt(Ctx& ctx, const StmtPtr& g) {
  return std::visit(
      [&](const auto& n) -> Outcome {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::True>) {
          TraceScope scope(ctx, 4, g);
          scope.finish(true);
          return Outcome::ok();
        } else if constexpr (std::is_same_v<T, Stmt::Fail>) {
          // f has no derivation; no rule applies and no event is emitted.
          return Outcome::fail({n.code});
        } else if constexpr (std::is_same_v<T, Stmt::Call>) {
          return exec_call(ctx, n, g);
        } else if constexpr (std::is_same_v<T, Stmt::Cond> ||
                             std::is_same_v<T, Stmt::NegCond>) {
          constexpr bool negated = std::is_same_v<T, Stmt::NegCond>;
          TraceScope scope(ctx, negated ? 6 : 5, g);
          EvalResult r = eval_expr(ctx.prog.state, n.expr);
          if (const ErrorCode* err = std::get_if<ErrorCode>(&r)) {
            scope.finish(false);
            return Outcome::fail({*err});
          }
          const Value& v = std::get<Value>(r);
          if (!v.is_bool()) {
            scope.finish(false);
            return Outcome::fail(kTypeError);
          }
          bool holds = negated ? !v.as_bool() : v.as_bool();
          scope.finish(holds);
          return holds ? Outcome::ok() : Outcome::fail(kGenericFailure);
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          TraceScope scope(ctx, 7, g);
          EvalResult r = eval_expr(ctx.prog.state, n.expr);
          if (const ErrorCode* err = std::get_if<ErrorCode>(&r)) {
            scope.finish(false);
            return Outcome::fail({*err});
          }
          ctx.prog.state.set(n.var, std::move(std::get<Value>(r)));
          scope.finish(true);
          return Outcome::ok();
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          TraceScope scope(ctx, 8, g);
          Outcome first = exec_stmt(ctx, n.first);
          if (!first.success) {
            scope.finish(false);
            return first;
          }
          Outcome second = exec_stmt(ctx, n.second);
          scope.finish(second.success);
          return second;
        } else {
          return exec_choose(ctx, n, g);
        }
      },
      g->node);
}

}  // namespace

Outcome exec(Program& program, const StmtPtr& g, const ExecConfig& cfg,
             std::uint64_t* steps) {
  Ctx ctx{program, cfg};
  Outcome out = exec_stmt(ctx, g);
  if (steps) *steps = ctx.steps;
  return out;
}

RunResult run(Program& program, const StmtPtr& goal, const ExecConfig& cfg) {
  RunResult r;
  r.outcome = exec(program, goal, cfg, &r.steps);
  return r;
}

}  // namespace chlang
