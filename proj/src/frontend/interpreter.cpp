#include <optional>

#include "floc/frontend.hpp"

namespace floc::frontend {

std::string_view to_string(ExecResult::Status status) {
  switch (status) {
    case ExecResult::Status::Returned: return "Returned";
    case ExecResult::Status::PreconditionViolated: return "PreconditionViolated";
    case ExecResult::Status::FuelExhausted: return "FuelExhausted";
    case ExecResult::Status::Overflow: return "Overflow";
    case ExecResult::Status::CalleePreconditionViolated: return "CalleePreconditionViolated";
  }
  return "?";
}

namespace {

// Non-local exits out of the statement walker.
struct Abort {
  ExecResult::Status status;
  std::string detail;
};

struct ReturnSignal {
  std::optional<Value> value;
};

class Machine {
 public:
  Machine(const Program& p, std::size_t fuel) : p_(p), fuel_(fuel) {}

  ExecResult run(const FunctionDef& f, const Valuation& env) {
    init_globals(env);
    Frame frame = entry_frame(f, env);
    try {
      if (!contract_holds(f.requires_clauses, frame, nullptr, nullptr))
        return {ExecResult::Status::PreconditionViolated, std::nullopt, {}, f.name};
      auto ret = call_body(f, frame);
      return {ExecResult::Status::Returned, ret, globals_, {}};
    } catch (const Abort& a) {
      return {a.status, std::nullopt, {}, a.detail};
    }
  }

  bool check_ensures(const FunctionDef& f, const Valuation& pre, const ExecResult& r) {
    init_globals(pre);
    Valuation old = globals_;
    Frame frame = entry_frame(f, pre);
    globals_ = r.globals;
    try {
      return contract_holds(f.ensures_clauses, frame, r.value ? &*r.value : nullptr, &old);
    } catch (const Abort&) {
      return false;
    }
  }

  bool check_requires(const FunctionDef& f, const Valuation& env) {
    init_globals(env);
    Frame frame = entry_frame(f, env);
    try {
      return contract_holds(f.requires_clauses, frame, nullptr, nullptr);
    } catch (const Abort&) {
      return false;
    }
  }

 private:
  struct Frame {
    std::vector<std::map<std::string, Value>> locals;
    // Names bound by the caller that are not program variables
    // (an instrumented placeholder, for instance).
    std::map<std::string, Value> extra;
  };

  void init_globals(const Valuation& env) {
    globals_.clear();
    for (const auto& g : p_.globals) {
      if (g.is_constant) {
        globals_[g.name] = literal(*g.init);
      } else if (auto it = env.find(g.name); it != env.end()) {
        globals_[g.name] = it->second;
      } else {
        globals_[g.name] = g.init ? literal(*g.init) : zero(g.sort);
      }
    }
  }

  Frame entry_frame(const FunctionDef& f, const Valuation& env) const {
    Frame frame;
    for (const auto& [name, value] : env) frame.extra[name] = value;
    frame.locals.emplace_back();
    for (const auto& prm : f.params) {
      auto it = env.find(prm.name);
      frame.locals.back()[prm.name] = it != env.end() ? it->second : zero(prm.sort);
    }
    return frame;
  }

  static Value zero(Sort s) { return s == Sort::Bool ? Value{false} : Value{std::int64_t{0}}; }

  static Value literal(const Expr& e) {
    return e.kind == ExprKind::BoolLit ? Value{e.bool_value} : Value{e.int_value};
  }

  bool contract_holds(const std::vector<Expr>& clauses, Frame& frame, const Value* result,
                      const Valuation* old) {
    for (const auto& c : clauses) {
      result_ = result;
      old_ = old;
      bool ok = std::get<bool>(eval(c, frame));
      result_ = nullptr;
      old_ = nullptr;
      if (!ok) return false;
    }
    return true;
  }

  std::optional<Value> call_body(const FunctionDef& f, Frame& frame) {
    try {
      exec_block(f.body, frame);
    } catch (ReturnSignal& r) {
      return r.value;
    }
    return std::nullopt;
  }

  Value* find_var(const std::string& name, Frame& frame) {
    for (auto it = frame.locals.rbegin(); it != frame.locals.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    if (auto it = globals_.find(name); it != globals_.end()) return &it->second;
    if (auto it = frame.extra.find(name); it != frame.extra.end()) return &it->second;
    return nullptr;
  }

  void burn() {
    if (fuel_ == 0) throw Abort{ExecResult::Status::FuelExhausted, "step budget exhausted"};
    --fuel_;
  }

  void exec_block(const std::vector<Stmt>& body, Frame& frame) {
    frame.locals.emplace_back();
    try {
      for (const auto& s : body) exec(s, frame);
    } catch (...) {
      frame.locals.pop_back();
      throw;
    }
    frame.locals.pop_back();
  }

  void exec(const Stmt& s, Frame& frame) {
    burn();
    switch (s.kind) {
      case StmtKind::VarDecl:
        frame.locals.back()[s.name] = s.expr ? eval(*s.expr, frame) : zero(s.sort);
        return;
      case StmtKind::Assign: {
        Value v = eval(*s.expr, frame);
        Value* slot = find_var(s.name, frame);
        if (!slot) throw Error("interpret: unbound variable " + s.name);
        *slot = v;
        return;
      }
      case StmtKind::If:
        if (std::get<bool>(eval(*s.expr, frame))) {
          exec_block(s.body, frame);
        } else {
          exec_block(s.else_body, frame);
        }
        return;
      case StmtKind::While:
        while (std::get<bool>(eval(*s.expr, frame))) {
          burn();
          exec_block(s.body, frame);
        }
        return;
      case StmtKind::Return: {
        std::optional<Value> v;
        if (s.expr) v = eval(*s.expr, frame);
        throw ReturnSignal{v};
      }
      case StmtKind::Block: exec_block(s.body, frame); return;
    }
  }

  [[noreturn]] static void overflow() { throw Abort{ExecResult::Status::Overflow, "integer overflow"}; }

  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) overflow();
    return out;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_sub_overflow(a, b, &out)) overflow();
    return out;
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) overflow();
    return out;
  }

  Value eval(const Expr& e, Frame& frame) {
    auto i = [&](const Expr& x) { return std::get<std::int64_t>(eval(x, frame)); };
    auto b = [&](const Expr& x) { return std::get<bool>(eval(x, frame)); };
    switch (e.kind) {
      case ExprKind::IntLit: return e.int_value;
      case ExprKind::BoolLit: return e.bool_value;
      case ExprKind::Var: {
        Value* v = find_var(e.name, frame);
        if (!v) throw Error("interpret: unbound variable " + e.name);
        return *v;
      }
      case ExprKind::Result:
        if (!result_) throw Error("interpret: \\result outside ensures");
        return *result_;
      case ExprKind::Old: {
        if (!old_) throw Error("interpret: \\old outside ensures");
        return old_->at(e.name);
      }
      case ExprKind::Neg: return sub(0, i(e.operands[0]));
      case ExprKind::Not: return !b(e.operands[0]);
      case ExprKind::Add: {
        std::int64_t l = i(e.operands[0]);
        return add(l, i(e.operands[1]));
      }
      case ExprKind::Sub: {
        std::int64_t l = i(e.operands[0]);
        return sub(l, i(e.operands[1]));
      }
      case ExprKind::Mul: {
        std::int64_t l = i(e.operands[0]);
        return mul(l, i(e.operands[1]));
      }
      case ExprKind::Lt: { auto l = i(e.operands[0]); return l < i(e.operands[1]); }
      case ExprKind::Le: { auto l = i(e.operands[0]); return l <= i(e.operands[1]); }
      case ExprKind::Gt: { auto l = i(e.operands[0]); return l > i(e.operands[1]); }
      case ExprKind::Ge: { auto l = i(e.operands[0]); return l >= i(e.operands[1]); }
      case ExprKind::Eq: { Value l = eval(e.operands[0], frame); return l == eval(e.operands[1], frame); }
      case ExprKind::Ne: { Value l = eval(e.operands[0], frame); return l != eval(e.operands[1], frame); }
      // Expressions are pure, so both operands are always evaluated.
      case ExprKind::And: { bool l = b(e.operands[0]); bool r = b(e.operands[1]); return l && r; }
      case ExprKind::Or: { bool l = b(e.operands[0]); bool r = b(e.operands[1]); return l || r; }
      case ExprKind::Call: return call(e, frame);
    }
    return false;
  }

  Value call(const Expr& e, Frame& frame) {
    const FunctionDef* callee = p_.find_function(e.name);
    if (!callee) throw Error("interpret: unknown function " + e.name);
    Frame inner;
    inner.locals.emplace_back();
    for (std::size_t k = 0; k < callee->params.size(); ++k)
      inner.locals.back()[callee->params[k].name] = eval(e.operands[k], frame);
    const Value* saved_result = result_;
    const Valuation* saved_old = old_;
    if (!contract_holds(callee->requires_clauses, inner, nullptr, nullptr))
      throw Abort{ExecResult::Status::CalleePreconditionViolated, callee->name};
    auto v = call_body(*callee, inner);
    result_ = saved_result;
    old_ = saved_old;
    if (!v) throw Error("interpret: void call in expression");
    return *v;
  }

  const Program& p_;
  std::size_t fuel_;
  std::map<std::string, Value> globals_;
  const Value* result_ = nullptr;
  const Valuation* old_ = nullptr;
};

}  // namespace

ExecResult interpret(const Program& p, const FunctionDef& f, const Valuation& env, std::size_t fuel) {
  return Machine(p, fuel).run(f, env);
}

bool ensures_holds(const Program& p, const FunctionDef& f, const Valuation& pre, const ExecResult& result) {
  if (result.status != ExecResult::Status::Returned) return false;
  return Machine(p, 0).check_ensures(f, pre, result);
}

bool requires_holds(const Program& p, const FunctionDef& f, const Valuation& env) {
  return Machine(p, 0).check_requires(f, env);
}

}  // namespace floc::frontend
