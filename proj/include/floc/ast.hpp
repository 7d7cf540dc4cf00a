#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "floc/common.hpp"

namespace floc {

enum class ExprKind {
  IntLit,
  BoolLit,
  Var,
  Neg,
  Not,
  Add,
  Sub,
  Mul,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  And,
  Or,
  Call,
  Result,
  Old,
};

bool is_binary(ExprKind kind);
bool is_unary(ExprKind kind);
bool is_comparison(ExprKind kind);
std::string_view operator_symbol(ExprKind kind);

/// Expression node. `sort` is Void until the typechecker has run.
struct Expr {
  ExprKind kind = ExprKind::IntLit;
  Sort sort = Sort::Void;
  std::int64_t int_value = 0;
  bool bool_value = false;
  // Variable name, callee name, or the global named by \old.
  std::string name;
  std::vector<Expr> operands;
  Span span;

  static Expr int_lit(std::int64_t value, Span span = {});
  static Expr bool_lit(bool value, Span span = {});
  static Expr var(std::string name, Sort sort = Sort::Void, Span span = {});
  static Expr unary(ExprKind kind, Expr operand, Span span = {});
  static Expr binary(ExprKind kind, Expr lhs, Expr rhs, Span span = {});
  static Expr call(std::string callee, std::vector<Expr> args, Span span = {});

  bool is_atom() const {
    return kind == ExprKind::IntLit || kind == ExprKind::BoolLit || kind == ExprKind::Var;
  }
  bool is_literal() const { return kind == ExprKind::IntLit || kind == ExprKind::BoolLit; }
};

/// Structural equality; spans are ignored. Sorts are ignored too so that a
/// freshly parsed tree compares equal to a typechecked one.
bool same_shape(const Expr& a, const Expr& b);

enum class StmtKind { VarDecl, Assign, If, While, Return, Block };

struct Stmt {
  StmtKind kind = StmtKind::Block;
  // VarDecl: declared name and sort. Assign: target name (sort of target).
  std::string name;
  Sort sort = Sort::Void;
  // VarDecl initializer, Assign RHS, If/While condition, Return value.
  std::optional<Expr> expr;
  // While only.
  std::optional<Expr> invariant;
  // Block contents, If then-branch, While body.
  std::vector<Stmt> body;
  // If else-branch.
  std::vector<Stmt> else_body;
  bool has_else = false;
  Span span;

  static Stmt var_decl(std::string name, Sort sort, std::optional<Expr> init, Span span = {});
  static Stmt assign(std::string target, Expr rhs, Span span = {});
  static Stmt if_(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body,
                  bool has_else, Span span = {});
  static Stmt while_(Expr cond, Expr invariant, std::vector<Stmt> body, Span span = {});
  static Stmt return_(std::optional<Expr> value, Span span = {});
  static Stmt block(std::vector<Stmt> body, Span span = {});
};

bool same_shape(const Stmt& a, const Stmt& b);
bool same_shape(const std::vector<Stmt>& a, const std::vector<Stmt>& b);

struct Param {
  std::string name;
  Sort sort = Sort::Int;
  Span span;
};

struct FunctionDef {
  std::string name;
  bool is_pure = false;
  Sort return_sort = Sort::Void;
  std::vector<Param> params;
  std::vector<Expr> requires_clauses;
  std::vector<Expr> ensures_clauses;
  std::vector<Stmt> body;
  Span span;

  const Param* find_param(std::string_view name) const;
};

struct GlobalDecl {
  std::string name;
  Sort sort = Sort::Int;
  std::optional<Expr> init;
  Span span;
  // Set by the typechecker: initialized and never assigned by any function.
  bool is_constant = false;
};

struct Program {
  std::string file;
  std::string source;
  std::vector<GlobalDecl> globals;
  std::vector<FunctionDef> functions;

  const FunctionDef* find_function(std::string_view name) const;
  FunctionDef* find_function(std::string_view name);
  const GlobalDecl* find_global(std::string_view name) const;
};

bool same_shape(const FunctionDef& a, const FunctionDef& b);
bool same_shape(const Program& a, const Program& b);

/// Pre-order walk over an expression tree.
template <typename Fn>
void for_each_expr(const Expr& e, Fn&& fn) {
  fn(e);
  for (const auto& op : e.operands) for_each_expr(op, fn);
}

}  // namespace floc
