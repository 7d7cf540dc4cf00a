#include "floc/ast.hpp"

#include <sstream>
#include <tuple>

namespace floc {

std::string_view to_string(Sort sort) {
  switch (sort) {
    case Sort::Int: return "int";
    case Sort::Bool: return "bool";
    case Sort::Void: return "void";
  }
  return "?";
}

bool Span::contains(const Span& inner) const {
  auto before = [](int l1, int c1, int l2, int c2) {
    return std::tie(l1, c1) <= std::tie(l2, c2);
  };
  return before(start_line, start_col, inner.start_line, inner.start_col) &&
         before(inner.end_line, inner.end_col, end_line, end_col);
}

std::string Span::to_string() const {
  std::ostringstream os;
  os << file << ':' << start_line << ':' << start_col << '-' << end_line << ':' << end_col;
  return os.str();
}

Span join(const Span& first, const Span& last) {
  Span s = first;
  s.end_line = last.end_line;
  s.end_col = last.end_col;
  return s;
}

std::string to_string(const Value& value) {
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  return std::to_string(std::get<std::int64_t>(value));
}

bool is_binary(ExprKind kind) {
  switch (kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge:
    case ExprKind::Eq:
    case ExprKind::Ne:
    case ExprKind::And:
    case ExprKind::Or: return true;
    default: return false;
  }
}

bool is_unary(ExprKind kind) { return kind == ExprKind::Neg || kind == ExprKind::Not; }

bool is_comparison(ExprKind kind) {
  switch (kind) {
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge:
    case ExprKind::Eq:
    case ExprKind::Ne: return true;
    default: return false;
  }
}

std::string_view operator_symbol(ExprKind kind) {
  switch (kind) {
    case ExprKind::Neg: return "-";
    case ExprKind::Not: return "!";
    case ExprKind::Add: return "+";
    case ExprKind::Sub: return "-";
    case ExprKind::Mul: return "*";
    case ExprKind::Lt: return "<";
    case ExprKind::Le: return "<=";
    case ExprKind::Gt: return ">";
    case ExprKind::Ge: return ">=";
    case ExprKind::Eq: return "==";
    case ExprKind::Ne: return "!=";
    case ExprKind::And: return "&&";
    case ExprKind::Or: return "||";
    default: return "";
  }
}

Expr Expr::int_lit(std::int64_t value, Span span) {
  Expr e;
  e.kind = ExprKind::IntLit;
  e.sort = Sort::Int;
  e.int_value = value;
  e.span = std::move(span);
  return e;
}

Expr Expr::bool_lit(bool value, Span span) {
  Expr e;
  e.kind = ExprKind::BoolLit;
  e.sort = Sort::Bool;
  e.bool_value = value;
  e.span = std::move(span);
  return e;
}

Expr Expr::var(std::string name, Sort sort, Span span) {
  Expr e;
  e.kind = ExprKind::Var;
  e.sort = sort;
  e.name = std::move(name);
  e.span = std::move(span);
  return e;
}

Expr Expr::unary(ExprKind kind, Expr operand, Span span) {
  Expr e;
  e.kind = kind;
  e.operands.push_back(std::move(operand));
  e.span = std::move(span);
  return e;
}

Expr Expr::binary(ExprKind kind, Expr lhs, Expr rhs, Span span) {
  Expr e;
  e.kind = kind;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  e.span = std::move(span);
  return e;
}

Expr Expr::call(std::string callee, std::vector<Expr> args, Span span) {
  Expr e;
  e.kind = ExprKind::Call;
  e.name = std::move(callee);
  e.operands = std::move(args);
  e.span = std::move(span);
  return e;
}

bool same_shape(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.operands.size() != b.operands.size()) return false;
  if (a.kind == ExprKind::IntLit && a.int_value != b.int_value) return false;
  if (a.kind == ExprKind::BoolLit && a.bool_value != b.bool_value) return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i)
    if (!same_shape(a.operands[i], b.operands[i])) return false;
  return true;
}

namespace {
bool same_opt(const std::optional<Expr>& a, const std::optional<Expr>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || same_shape(*a, *b);
}
}  // namespace

Stmt Stmt::var_decl(std::string name, Sort sort, std::optional<Expr> init, Span span) {
  Stmt s;
  s.kind = StmtKind::VarDecl;
  s.name = std::move(name);
  s.sort = sort;
  s.expr = std::move(init);
  s.span = std::move(span);
  return s;
}

Stmt Stmt::assign(std::string target, Expr rhs, Span span) {
  Stmt s;
  s.kind = StmtKind::Assign;
  s.name = std::move(target);
  s.sort = rhs.sort;
  s.expr = std::move(rhs);
  s.span = std::move(span);
  return s;
}

Stmt Stmt::if_(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body, bool has_else,
               Span span) {
  Stmt s;
  s.kind = StmtKind::If;
  s.expr = std::move(cond);
  s.body = std::move(then_body);
  s.else_body = std::move(else_body);
  s.has_else = has_else;
  s.span = std::move(span);
  return s;
}

Stmt Stmt::while_(Expr cond, Expr invariant, std::vector<Stmt> body, Span span) {
  Stmt s;
  s.kind = StmtKind::While;
  s.expr = std::move(cond);
  s.invariant = std::move(invariant);
  s.body = std::move(body);
  s.span = std::move(span);
  return s;
}

Stmt Stmt::return_(std::optional<Expr> value, Span span) {
  Stmt s;
  s.kind = StmtKind::Return;
  s.expr = std::move(value);
  s.span = std::move(span);
  return s;
}

Stmt Stmt::block(std::vector<Stmt> body, Span span) {
  Stmt s;
  s.kind = StmtKind::Block;
  s.body = std::move(body);
  s.span = std::move(span);
  return s;
}

bool same_shape(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (a.kind == StmtKind::VarDecl && a.sort != b.sort) return false;
  if (!same_opt(a.expr, b.expr) || !same_opt(a.invariant, b.invariant)) return false;
  // An empty else branch and a missing one are the same program.
  return same_shape(a.body, b.body) && same_shape(a.else_body, b.else_body);
}

bool same_shape(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_shape(a[i], b[i])) return false;
  return true;
}

const Param* FunctionDef::find_param(std::string_view n) const {
  for (const auto& p : params)
    if (p.name == n) return &p;
  return nullptr;
}

const FunctionDef* Program::find_function(std::string_view n) const {
  for (const auto& f : functions)
    if (f.name == n) return &f;
  return nullptr;
}

FunctionDef* Program::find_function(std::string_view n) {
  for (auto& f : functions)
    if (f.name == n) return &f;
  return nullptr;
}

const GlobalDecl* Program::find_global(std::string_view n) const {
  for (const auto& g : globals)
    if (g.name == n) return &g;
  return nullptr;
}

namespace {
bool same_exprs(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_shape(a[i], b[i])) return false;
  return true;
}
}  // namespace

bool same_shape(const FunctionDef& a, const FunctionDef& b) {
  if (a.name != b.name || a.is_pure != b.is_pure || a.return_sort != b.return_sort) return false;
  if (a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i].name != b.params[i].name || a.params[i].sort != b.params[i].sort) return false;
  return same_exprs(a.requires_clauses, b.requires_clauses) &&
         same_exprs(a.ensures_clauses, b.ensures_clauses) && same_shape(a.body, b.body);
}

bool same_shape(const Program& a, const Program& b) {
  if (a.globals.size() != b.globals.size() || a.functions.size() != b.functions.size())
    return false;
  for (std::size_t i = 0; i < a.globals.size(); ++i) {
    const auto& x = a.globals[i];
    const auto& y = b.globals[i];
    if (x.name != y.name || x.sort != y.sort || !same_opt(x.init, y.init)) return false;
  }
  for (std::size_t i = 0; i < a.functions.size(); ++i)
    if (!same_shape(a.functions[i], b.functions[i])) return false;
  return true;
}

}  // namespace floc
