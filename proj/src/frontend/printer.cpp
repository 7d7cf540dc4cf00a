#include <sstream>

#include "floc/frontend.hpp"

namespace floc::frontend {

namespace {

// Binding strength, C order. Atoms and calls bind tightest.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Or: return 1;
    case ExprKind::And: return 2;
    case ExprKind::Eq:
    case ExprKind::Ne: return 3;
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge: return 4;
    case ExprKind::Add:
    case ExprKind::Sub: return 5;
    case ExprKind::Mul: return 6;
    case ExprKind::Neg:
    case ExprKind::Not: return 7;
    case ExprKind::IntLit: return e.int_value < 0 ? 7 : 8;
    default: return 8;
  }
}

void print(std::ostream& os, const Expr& e);

void print_operand(std::ostream& os, const Expr& e, int min_prec) {
  if (precedence(e) < min_prec) {
    os << '(';
    print(os, e);
    os << ')';
  } else {
    print(os, e);
  }
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLit: os << e.int_value; return;
    case ExprKind::BoolLit: os << (e.bool_value ? "true" : "false"); return;
    case ExprKind::Var: os << e.name; return;
    case ExprKind::Result: os << "\\result"; return;
    case ExprKind::Old: os << "\\old(" << e.name << ')'; return;
    case ExprKind::Call: {
      os << e.name << '(';
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) os << ", ";
        print(os, e.operands[i]);
      }
      os << ')';
      return;
    }
    case ExprKind::Neg:
    case ExprKind::Not: {
      os << operator_symbol(e.kind);
      const Expr& op = e.operands[0];
      // "-5" would re-parse as a literal, so keep Neg(5) distinguishable.
      if (e.kind == ExprKind::Neg && op.kind == ExprKind::IntLit && op.int_value >= 0) {
        os << '(' << op.int_value << ')';
        return;
      }
      print_operand(os, op, 7);
      return;
    }
    default: break;
  }
  // Binary operators are left-associative.
  const int p = precedence(e);
  print_operand(os, e.operands[0], p);
  os << ' ' << operator_symbol(e.kind) << ' ';
  print_operand(os, e.operands[1], p + 1);
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void print_block(std::ostream& os, const std::vector<Stmt>& body, int depth);

void print_stmt(std::ostream& os, const Stmt& s, int depth) {
  indent(os, depth);
  switch (s.kind) {
    case StmtKind::VarDecl:
    case StmtKind::Assign:
    case StmtKind::Return: os << print_stmt_line(s) << '\n'; return;
    case StmtKind::If:
      os << "if (" << print_expr(*s.expr) << ") {\n";
      print_block(os, s.body, depth + 1);
      indent(os, depth);
      if (s.has_else || !s.else_body.empty()) {
        os << "} else {\n";
        print_block(os, s.else_body, depth + 1);
        indent(os, depth);
      }
      os << "}\n";
      return;
    case StmtKind::While:
      os << "/*@ loop invariant " << print_expr(*s.invariant) << "; @*/\n";
      indent(os, depth);
      os << "while (" << print_expr(*s.expr) << ") {\n";
      print_block(os, s.body, depth + 1);
      indent(os, depth);
      os << "}\n";
      return;
    case StmtKind::Block:
      os << "{\n";
      print_block(os, s.body, depth + 1);
      indent(os, depth);
      os << "}\n";
      return;
  }
}

void print_block(std::ostream& os, const std::vector<Stmt>& body, int depth) {
  for (const auto& s : body) print_stmt(os, s, depth);
}

void print_function_to(std::ostream& os, const FunctionDef& f) {
  if (!f.requires_clauses.empty() || !f.ensures_clauses.empty()) {
    os << "/*@";
    for (const auto& r : f.requires_clauses) os << " requires " << print_expr(r) << ';';
    for (const auto& e : f.ensures_clauses) os << " ensures " << print_expr(e) << ';';
    os << " @*/\n";
  }
  if (f.is_pure) os << "pure ";
  os << to_string(f.return_sort) << ' ' << f.name << '(';
  for (std::size_t i = 0; i < f.params.size(); ++i) {
    if (i) os << ", ";
    os << to_string(f.params[i].sort) << ' ' << f.params[i].name;
  }
  os << ") {\n";
  print_block(os, f.body, 1);
  os << "}\n";
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string print_stmt_line(const Stmt& s) {
  std::ostringstream os;
  switch (s.kind) {
    case StmtKind::VarDecl:
      os << to_string(s.sort) << ' ' << s.name;
      if (s.expr) os << " = " << print_expr(*s.expr);
      os << ';';
      break;
    case StmtKind::Assign: os << s.name << " = " << print_expr(*s.expr) << ';'; break;
    case StmtKind::Return:
      os << "return";
      if (s.expr) os << ' ' << print_expr(*s.expr);
      os << ';';
      break;
    case StmtKind::If: os << "if (" << print_expr(*s.expr) << ')'; break;
    case StmtKind::While: os << "while (" << print_expr(*s.expr) << ')'; break;
    case StmtKind::Block: os << '{'; break;
  }
  return os.str();
}

std::string print_function(const FunctionDef& f) {
  std::ostringstream os;
  print_function_to(os, f);
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& g : p.globals) {
    os << to_string(g.sort) << ' ' << g.name;
    if (g.init) os << " = " << print_expr(*g.init);
    os << ";\n";
  }
  for (const auto& f : p.functions) {
    os << '\n';
    print_function_to(os, f);
  }
  return os.str();
}

}  // namespace floc::frontend
