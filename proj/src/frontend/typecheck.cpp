#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <tuple>

#include "floc/frontend.hpp"

namespace floc::frontend {

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::SortMismatch: return "SortMismatch";
    case DiagnosticKind::IllegalResultUse: return "IllegalResultUse";
    case DiagnosticKind::IllegalOldUse: return "IllegalOldUse";
    case DiagnosticKind::AssignToParam: return "AssignToParam";
    case DiagnosticKind::UnknownIdentifier: return "UnknownIdentifier";
    case DiagnosticKind::DuplicateName: return "DuplicateName";
    case DiagnosticKind::ReservedName: return "ReservedName";
    case DiagnosticKind::NonPureCall: return "NonPureCall";
    case DiagnosticKind::RecursiveCall: return "RecursiveCall";
    case DiagnosticKind::CallInAnnotation: return "CallInAnnotation";
    case DiagnosticKind::ArityMismatch: return "ArityMismatch";
    case DiagnosticKind::MissingReturn: return "MissingReturn";
    case DiagnosticKind::MisplacedReturn: return "MisplacedReturn";
    case DiagnosticKind::ImpureFunction: return "ImpureFunction";
  }
  return "?";
}

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  os << span.file << ':' << span.start_line << ':' << span.start_col << ": "
     << frontend::to_string(kind) << ": " << message;
  return os.str();
}

namespace {
std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) os << '\n';
    os << ds[i].to_string();
  }
  return os.str();
}
}  // namespace

TypeError::TypeError(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

bool is_reserved_temp_name(std::string_view name) {
  static const std::regex kTemp("tmp_[0-9]+");
  return std::regex_match(name.begin(), name.end(), kTemp);
}

namespace {

enum class Where { Body, Requires, Ensures, Invariant };

class Checker {
 public:
  explicit Checker(Program& p) : p_(p) {}

  void run() {
    std::set<std::string> top_names;
    // Globals and functions are checked in source order so that a name is
    // only visible after its declaration.
    std::vector<std::pair<Span, int>> order;  // index >= 0: global, < 0: function
    for (std::size_t i = 0; i < p_.globals.size(); ++i)
      order.push_back({p_.globals[i].span, static_cast<int>(i)});
    for (std::size_t i = 0; i < p_.functions.size(); ++i)
      order.push_back({p_.functions[i].span, -1 - static_cast<int>(i)});
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      return std::tie(a.first.start_line, a.first.start_col) <
             std::tie(b.first.start_line, b.first.start_col);
    });
    for (const auto& [span, idx] : order) {
      if (idx >= 0) {
        check_global(p_.globals[idx], top_names);
      } else {
        check_function(p_.functions[-1 - idx], top_names);
      }
    }
    for (auto& g : p_.globals) g.is_constant = g.init.has_value() && !assigned_globals_.count(g.name);
    if (!diags_.empty()) throw TypeError(std::move(diags_));
  }

 private:
  void report(DiagnosticKind kind, std::string msg, const Span& span) {
    diags_.push_back({kind, std::move(msg), span});
  }

  void check_global(GlobalDecl& g, std::set<std::string>& top_names) {
    if (g.sort == Sort::Void) report(DiagnosticKind::SortMismatch, "global '" + g.name + "' has type void", g.span);
    if (is_reserved_temp_name(g.name))
      report(DiagnosticKind::ReservedName, "'" + g.name + "' is reserved for temporaries", g.span);
    if (!top_names.insert(g.name).second)
      report(DiagnosticKind::DuplicateName, "duplicate name '" + g.name + "'", g.span);
    if (g.init && g.init->sort != g.sort)
      report(DiagnosticKind::SortMismatch,
             "initializer of '" + g.name + "' has sort " + std::string(to_string(g.init->sort)),
             g.init->span);
    visible_globals_[g.name] = g.sort;
  }

  void check_function(FunctionDef& f, std::set<std::string>& top_names) {
    fn_ = &f;
    if (!top_names.insert(f.name).second)
      report(DiagnosticKind::DuplicateName, "duplicate name '" + f.name + "'", f.span);
    if (is_reserved_temp_name(f.name))
      report(DiagnosticKind::ReservedName, "'" + f.name + "' is reserved for temporaries", f.span);
    params_.clear();
    scopes_.clear();
    for (const auto& prm : f.params) {
      if (prm.sort == Sort::Void)
        report(DiagnosticKind::SortMismatch, "parameter '" + prm.name + "' has type void", prm.span);
      if (is_reserved_temp_name(prm.name))
        report(DiagnosticKind::ReservedName, "'" + prm.name + "' is reserved for temporaries", prm.span);
      if (params_.count(prm.name) || visible_globals_.count(prm.name) || defined_.count(prm.name))
        report(DiagnosticKind::DuplicateName, "parameter '" + prm.name + "' shadows another name",
               prm.span);
      params_[prm.name] = prm.sort;
    }
    for (auto& r : f.requires_clauses) expect_sort(r, Sort::Bool, Where::Requires);
    for (auto& e : f.ensures_clauses) expect_sort(e, Sort::Bool, Where::Ensures);

    scopes_.emplace_back();
    check_block(f.body, false);
    scopes_.clear();

    if (f.return_sort != Sort::Void && !block_returns(f.body))
      report(DiagnosticKind::MissingReturn, "function '" + f.name + "' may end without returning",
             f.span);
    defined_[f.name] = &f;
    fn_ = nullptr;
  }

  static bool block_returns(const std::vector<Stmt>& body) {
    if (body.empty()) return false;
    const Stmt& last = body.back();
    switch (last.kind) {
      case StmtKind::Return: return true;
      case StmtKind::If: return block_returns(last.body) && block_returns(last.else_body);
      case StmtKind::Block: return block_returns(last.body);
      default: return false;
    }
  }

  std::optional<Sort> lookup_var(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    if (auto f = params_.find(name); f != params_.end()) return f->second;
    if (auto f = visible_globals_.find(name); f != visible_globals_.end()) return f->second;
    return std::nullopt;
  }

  void declare_local(const std::string& name, Sort sort, const Span& span) {
    if (sort == Sort::Void) report(DiagnosticKind::SortMismatch, "variable '" + name + "' has type void", span);
    if (is_reserved_temp_name(name))
      report(DiagnosticKind::ReservedName, "'" + name + "' is reserved for temporaries", span);
    if (lookup_var(name) || defined_.count(name) || (fn_ && name == fn_->name))
      report(DiagnosticKind::DuplicateName, "declaration of '" + name + "' shadows another name", span);
    scopes_.back()[name] = sort;
  }

  void check_block(std::vector<Stmt>& body, bool in_loop) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      Stmt& s = body[i];
      if (s.kind == StmtKind::Return && i + 1 != body.size())
        report(DiagnosticKind::MisplacedReturn, "statements after return are unreachable", s.span);
      check_stmt(s, in_loop);
    }
  }

  void check_scoped(std::vector<Stmt>& body, bool in_loop) {
    scopes_.emplace_back();
    check_block(body, in_loop);
    scopes_.pop_back();
  }

  void check_stmt(Stmt& s, bool in_loop) {
    switch (s.kind) {
      case StmtKind::VarDecl:
        if (s.expr) expect_sort(*s.expr, s.sort, Where::Body);
        declare_local(s.name, s.sort, s.span);
        return;
      case StmtKind::Assign: {
        Sort rhs = check_expr(*s.expr, Where::Body);
        if (params_.count(s.name) && !lookup_local(s.name)) {
          report(DiagnosticKind::AssignToParam, "parameter '" + s.name + "' is immutable", s.span);
          s.sort = params_.at(s.name);
          return;
        }
        auto target = lookup_var(s.name);
        if (!target) {
          report(DiagnosticKind::UnknownIdentifier, "assignment to undeclared '" + s.name + "'", s.span);
          return;
        }
        s.sort = *target;
        if (!lookup_local(s.name)) {
          assigned_globals_.insert(s.name);
          if (fn_->is_pure)
            report(DiagnosticKind::ImpureFunction,
                   "pure function '" + fn_->name + "' assigns global '" + s.name + "'", s.span);
        }
        if (rhs != Sort::Void && rhs != *target)
          report(DiagnosticKind::SortMismatch,
                 "cannot assign " + std::string(to_string(rhs)) + " to '" + s.name + "' of sort " +
                     std::string(to_string(*target)),
                 s.expr->span);
        return;
      }
      case StmtKind::If:
        expect_sort(*s.expr, Sort::Bool, Where::Body);
        check_scoped(s.body, in_loop);
        check_scoped(s.else_body, in_loop);
        return;
      case StmtKind::While:
        expect_sort(*s.invariant, Sort::Bool, Where::Invariant);
        expect_sort(*s.expr, Sort::Bool, Where::Body);
        for_each_expr(*s.expr, [&](const Expr& e) {
          if (e.kind == ExprKind::Call)
            report(DiagnosticKind::CallInAnnotation,
                   "calls are not allowed in loop conditions; hoist '" + e.name + "' into a variable",
                   e.span);
        });
        check_scoped(s.body, true);
        return;
      case StmtKind::Return:
        if (in_loop) report(DiagnosticKind::MisplacedReturn, "return inside a loop body", s.span);
        if (fn_->return_sort == Sort::Void) {
          if (s.expr) {
            check_expr(*s.expr, Where::Body);
            report(DiagnosticKind::SortMismatch, "void function returns a value", s.span);
          }
        } else if (!s.expr) {
          report(DiagnosticKind::SortMismatch, "missing return value", s.span);
        } else {
          expect_sort(*s.expr, fn_->return_sort, Where::Body);
        }
        return;
      case StmtKind::Block: check_scoped(s.body, in_loop); return;
    }
  }

  bool lookup_local(const std::string& name) const {
    for (const auto& sc : scopes_)
      if (sc.count(name)) return true;
    return false;
  }

  void expect_sort(Expr& e, Sort want, Where where) {
    Sort got = check_expr(e, where);
    if (got != Sort::Void && got != want)
      report(DiagnosticKind::SortMismatch,
             "expected " + std::string(to_string(want)) + " but '" + print_expr(e) + "' has sort " +
                 std::string(to_string(got)),
             e.span);
  }

  // Returns Void when the sort could not be determined (already reported).
  Sort check_expr(Expr& e, Where where) {
    e.sort = infer(e, where);
    return e.sort;
  }

  Sort infer(Expr& e, Where where) {
    switch (e.kind) {
      case ExprKind::IntLit: return Sort::Int;
      case ExprKind::BoolLit: return Sort::Bool;
      case ExprKind::Var: {
        if (is_reserved_temp_name(e.name) && !lookup_var(e.name)) {
          report(DiagnosticKind::ReservedName, "'" + e.name + "' is reserved for temporaries", e.span);
          return Sort::Void;
        }
        auto s = lookup_var(e.name);
        if (!s) {
          report(DiagnosticKind::UnknownIdentifier, "unknown identifier '" + e.name + "'", e.span);
          return Sort::Void;
        }
        return *s;
      }
      case ExprKind::Result:
        if (where != Where::Ensures) {
          report(DiagnosticKind::IllegalResultUse, "\\result is only allowed in ensures clauses", e.span);
          return Sort::Void;
        }
        if (fn_->return_sort == Sort::Void) {
          report(DiagnosticKind::IllegalResultUse, "\\result used in a void function", e.span);
          return Sort::Void;
        }
        return fn_->return_sort;
      case ExprKind::Old: {
        if (where != Where::Ensures) {
          report(DiagnosticKind::IllegalOldUse, "\\old is only allowed in ensures clauses", e.span);
          return Sort::Void;
        }
        auto g = visible_globals_.find(e.name);
        if (g == visible_globals_.end()) {
          report(DiagnosticKind::IllegalOldUse, "\\old applies only to globals, not '" + e.name + "'",
                 e.span);
          return Sort::Void;
        }
        return g->second;
      }
      case ExprKind::Neg: return unary(e, Sort::Int, where);
      case ExprKind::Not: return unary(e, Sort::Bool, where);
      case ExprKind::Add:
      case ExprKind::Sub:
      case ExprKind::Mul: binary(e, Sort::Int, where); return Sort::Int;
      case ExprKind::Lt:
      case ExprKind::Le:
      case ExprKind::Gt:
      case ExprKind::Ge: binary(e, Sort::Int, where); return Sort::Bool;
      case ExprKind::And:
      case ExprKind::Or: binary(e, Sort::Bool, where); return Sort::Bool;
      case ExprKind::Eq:
      case ExprKind::Ne: {
        Sort l = check_expr(e.operands[0], where);
        Sort r = check_expr(e.operands[1], where);
        if (l != Sort::Void && r != Sort::Void && l != r)
          report(DiagnosticKind::SortMismatch, "operands of '" + print_expr(e) + "' differ in sort", e.span);
        return Sort::Bool;
      }
      case ExprKind::Call: return call(e, where);
    }
    return Sort::Void;
  }

  Sort unary(Expr& e, Sort want, Where where) {
    expect_sort(e.operands[0], want, where);
    return want;
  }

  void binary(Expr& e, Sort want, Where where) {
    expect_sort(e.operands[0], want, where);
    expect_sort(e.operands[1], want, where);
  }

  Sort call(Expr& e, Where where) {
    for (auto& a : e.operands) check_expr(a, where);
    if (where != Where::Body) {
      report(DiagnosticKind::CallInAnnotation, "calls are not allowed in annotations ('" + e.name + "')",
             e.span);
      return Sort::Void;
    }
    if (fn_ && e.name == fn_->name) {
      report(DiagnosticKind::RecursiveCall, "recursive call to '" + e.name + "'", e.span);
      return fn_->return_sort == Sort::Void ? Sort::Void : fn_->return_sort;
    }
    auto it = defined_.find(e.name);
    if (it == defined_.end()) {
      report(DiagnosticKind::UnknownIdentifier, "call to undefined function '" + e.name + "'", e.span);
      return Sort::Void;
    }
    const FunctionDef& callee = *it->second;
    if (!callee.is_pure)
      report(DiagnosticKind::NonPureCall, "'" + e.name + "' is not declared pure", e.span);
    if (callee.params.size() != e.operands.size()) {
      report(DiagnosticKind::ArityMismatch,
             "'" + e.name + "' expects " + std::to_string(callee.params.size()) + " arguments",
             e.span);
    } else {
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        Sort got = e.operands[i].sort;
        if (got != Sort::Void && got != callee.params[i].sort)
          report(DiagnosticKind::SortMismatch, "argument " + std::to_string(i + 1) + " of '" + e.name +
                                                   "' has wrong sort",
                 e.operands[i].span);
      }
    }
    if (callee.return_sort == Sort::Void) {
      report(DiagnosticKind::SortMismatch, "void function '" + e.name + "' used in an expression", e.span);
      return Sort::Void;
    }
    return callee.return_sort;
  }

  Program& p_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, Sort> visible_globals_;
  std::map<std::string, const FunctionDef*> defined_;
  std::set<std::string> assigned_globals_;
  std::map<std::string, Sort> params_;
  std::vector<std::map<std::string, Sort>> scopes_;
  const FunctionDef* fn_ = nullptr;
};

}  // namespace

Program typecheck(Program p) {
  Checker(p).run();
  return p;
}

Program load(std::string_view text, std::string file) { return typecheck(parse(text, std::move(file))); }

}  // namespace floc::frontend
