#include "chlang/ast.hpp"

namespace chlang {

ExprPtr make_literal(Value v) {
  return std::make_shared<Expr>(Expr{Expr::Literal{std::move(v)}});
}
ExprPtr make_var(std::string name) {
  return std::make_shared<Expr>(Expr{Expr::Var{std::move(name)}});
}
ExprPtr make_unary(UnaryOp op, ExprPtr operand) {
  return std::make_shared<Expr>(Expr{Expr::Unary{op, std::move(operand)}});
}
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(Expr{Expr::Binary{op, std::move(lhs), std::move(rhs)}});
}

StmtPtr make_true() { return std::make_shared<Stmt>(Stmt{Stmt::True{}}); }
StmtPtr make_fail(std::string code) {
  return std::make_shared<Stmt>(Stmt{Stmt::Fail{ErrorCode{std::move(code)}}});
}
StmtPtr make_call(std::string name, std::vector<ExprPtr> args) {
  return std::make_shared<Stmt>(Stmt{Stmt::Call{std::move(name), std::move(args)}});
}
StmtPtr make_cond(ExprPtr e) {
  return std::make_shared<Stmt>(Stmt{Stmt::Cond{std::move(e)}});
}
StmtPtr make_negcond(ExprPtr e) {
  return std::make_shared<Stmt>(Stmt{Stmt::NegCond{std::move(e)}});
}
StmtPtr make_assign(std::string var, ExprPtr e) {
  return std::make_shared<Stmt>(Stmt{Stmt::Assign{std::move(var), std::move(e)}});
}
StmtPtr make_seq(StmtPtr first, StmtPtr second) {
  return std::make_shared<Stmt>(Stmt{Stmt::Seq{std::move(first), std::move(second)}});
}
StmtPtr make_choose(std::vector<StmtPtr> alts) {
  return std::make_shared<Stmt>(Stmt{Stmt::Choose{std::move(alts)}});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const T& nb = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Expr::Literal>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          return na.name == nb.name;
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          return na.op == nb.op && expr_equal(na.operand, nb.operand);
        } else {
          return na.op == nb.op && expr_equal(na.lhs, nb.lhs) &&
                 expr_equal(na.rhs, nb.rhs);
        }
      },
      a->node);
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const T& nb = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Stmt::True>) {
          return true;
        } else if constexpr (std::is_same_v<T, Stmt::Fail>) {
          return na.code == nb.code;
        } else if constexpr (std::is_same_v<T, Stmt::Call>) {
          if (na.name != nb.name || na.args.size() != nb.args.size()) return false;
          for (std::size_t i = 0; i < na.args.size(); ++i) {
            if (!expr_equal(na.args[i], nb.args[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Stmt::Cond> ||
                             std::is_same_v<T, Stmt::NegCond>) {
          return expr_equal(na.expr, nb.expr);
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          return na.var == nb.var && expr_equal(na.expr, nb.expr);
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          return stmt_equal(na.first, nb.first) && stmt_equal(na.second, nb.second);
        } else {
          if (na.alts.size() != nb.alts.size()) return false;
          for (std::size_t i = 0; i < na.alts.size(); ++i) {
            if (!stmt_equal(na.alts[i], nb.alts[i])) return false;
          }
          return true;
        }
      },
      a->node);
}

void collect_expr_vars(const ExprPtr& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Var>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Expr::Unary>) {
          collect_expr_vars(n.operand, out);
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          collect_expr_vars(n.lhs, out);
          collect_expr_vars(n.rhs, out);
        }
      },
      e->node);
}

static void collect_stmt_vars(const StmtPtr& s, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Call>) {
          for (const auto& a : n.args) collect_expr_vars(a, out);
        } else if constexpr (std::is_same_v<T, Stmt::Cond> ||
                             std::is_same_v<T, Stmt::NegCond>) {
          collect_expr_vars(n.expr, out);
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          out.insert(n.var);
          collect_expr_vars(n.expr, out);
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          collect_stmt_vars(n.first, out);
          collect_stmt_vars(n.second, out);
        } else if constexpr (std::is_same_v<T, Stmt::Choose>) {
          for (const auto& a : n.alts) collect_stmt_vars(a, out);
        }
      },
      s->node);
}

std::set<std::string> free_vars(const StmtPtr& s) {
  std::set<std::string> out;
  collect_stmt_vars(s, out);
  return out;
}

}  // namespace chlang
