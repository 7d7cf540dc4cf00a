#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "floc/logic.hpp"

namespace floc::logic {

struct Formula::Node {
  Op op;
  Sort sort;
  std::int64_t value;
  std::string name;
  std::vector<Formula> args;
  std::vector<SortedVar> binders;
};

namespace {
const std::shared_ptr<const Formula::Node>& true_node() {
  static const auto node =
      std::make_shared<const Formula::Node>(Formula::Node{Op::BoolConst, Sort::Bool, 1, {}, {}, {}});
  return node;
}
}  // namespace

Formula::Formula() : node_(true_node()) {}

Op Formula::op() const { return node_->op; }
Sort Formula::sort() const { return node_->sort; }
std::int64_t Formula::int_value() const { return node_->value; }
bool Formula::bool_value() const { return node_->value != 0; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Formula>& Formula::args() const { return node_->args; }
const std::vector<SortedVar>& Formula::binders() const { return node_->binders; }

Formula Formula::make(Op op, Sort sort, std::vector<Formula> args, std::int64_t value, std::string name,
                      std::vector<SortedVar> binders) {
  return Formula(std::make_shared<const Node>(
      Node{op, sort, value, std::move(name), std::move(args), std::move(binders)}));
}

bool equal(const Formula& a, const Formula& b) {
  if (a.id() == b.id()) return true;
  if (a.op() != b.op() || a.sort() != b.sort() || a.int_value() != b.int_value() ||
      a.name() != b.name() || a.binders() != b.binders() || a.args().size() != b.args().size())
    return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!equal(a.arg(i), b.arg(i))) return false;
  return true;
}

namespace {

void require_sort(const Formula& f, Sort s, const char* what) {
  if (f.sort() != s)
    throw SortError(std::string(what) + ": expected " + std::string(to_string(s)) + " operand, got " +
                    std::string(to_string(f.sort())) + " in " + to_text(f));
}

std::optional<std::int64_t> fold_arith(Op op, std::int64_t a, std::int64_t b) {
  std::int64_t out;
  bool overflow = false;
  switch (op) {
    case Op::Add: overflow = __builtin_add_overflow(a, b, &out); break;
    case Op::Sub: overflow = __builtin_sub_overflow(a, b, &out); break;
    case Op::Mul: overflow = __builtin_mul_overflow(a, b, &out); break;
    default: return std::nullopt;
  }
  if (overflow) return std::nullopt;
  return out;
}

Formula arith(Op op, Formula a, Formula b, const char* what) {
  require_sort(a, Sort::Int, what);
  require_sort(b, Sort::Int, what);
  if (a.op() == Op::IntConst && b.op() == Op::IntConst)
    if (auto v = fold_arith(op, a.int_value(), b.int_value())) return int_const(*v);
  return Formula::make(op, Sort::Int, {std::move(a), std::move(b)});
}

Formula compare(Op op, Formula a, Formula b, const char* what) {
  require_sort(a, Sort::Int, what);
  require_sort(b, Sort::Int, what);
  if (a.op() == Op::IntConst && b.op() == Op::IntConst) {
    const auto x = a.int_value();
    const auto y = b.int_value();
    switch (op) {
      case Op::Lt: return bool_const(x < y);
      case Op::Le: return bool_const(x <= y);
      case Op::Gt: return bool_const(x > y);
      case Op::Ge: return bool_const(x >= y);
      default: break;
    }
  }
  return Formula::make(op, Sort::Bool, {std::move(a), std::move(b)});
}

}  // namespace

Formula int_const(std::int64_t v) { return Formula::make(Op::IntConst, Sort::Int, {}, v); }
Formula bool_const(bool v) { return Formula::make(Op::BoolConst, Sort::Bool, {}, v ? 1 : 0); }
Formula var(std::string name, Sort sort) { return Formula::make(Op::Var, sort, {}, 0, std::move(name)); }
Formula var(const SortedVar& v) { return var(v.name, v.sort); }

Formula add(Formula a, Formula b) { return arith(Op::Add, std::move(a), std::move(b), "+"); }
Formula sub(Formula a, Formula b) { return arith(Op::Sub, std::move(a), std::move(b), "-"); }
Formula mul(Formula a, Formula b) { return arith(Op::Mul, std::move(a), std::move(b), "*"); }

Formula neg(Formula a) {
  require_sort(a, Sort::Int, "unary -");
  if (a.op() == Op::IntConst && a.int_value() != INT64_MIN) return int_const(-a.int_value());
  return Formula::make(Op::Neg, Sort::Int, {std::move(a)});
}

Formula lt(Formula a, Formula b) { return compare(Op::Lt, std::move(a), std::move(b), "<"); }
Formula le(Formula a, Formula b) { return compare(Op::Le, std::move(a), std::move(b), "<="); }
Formula gt(Formula a, Formula b) { return compare(Op::Gt, std::move(a), std::move(b), ">"); }
Formula ge(Formula a, Formula b) { return compare(Op::Ge, std::move(a), std::move(b), ">="); }

Formula eq(Formula a, Formula b) {
  if (a.sort() != b.sort() || a.sort() == Sort::Void)
    throw SortError("==: operands differ in sort: " + to_text(a) + ", " + to_text(b));
  if (a.is_const() && b.is_const()) return bool_const(a.int_value() == b.int_value());
  return Formula::make(Op::Eq, Sort::Bool, {std::move(a), std::move(b)});
}

Formula ne(Formula a, Formula b) {
  if (a.sort() != b.sort() || a.sort() == Sort::Void)
    throw SortError("!=: operands differ in sort: " + to_text(a) + ", " + to_text(b));
  if (a.is_const() && b.is_const()) return bool_const(a.int_value() != b.int_value());
  return Formula::make(Op::Ne, Sort::Bool, {std::move(a), std::move(b)});
}

// An absorbing literal (false in a conjunction, true in a disjunction) only
// folds the whole term when every other operand is a literal too; otherwise it
// is kept, so simplification never drops a variable such as a placeholder.
Formula mk_and(std::vector<Formula> conjuncts) {
  std::vector<Formula> kept;
  bool absorbed = false;
  for (auto& c : conjuncts) {
    require_sort(c, Sort::Bool, "&&");
    if (c.is_true()) continue;
    if (c.is_false()) {
      absorbed = true;
      continue;
    }
    if (c.op() == Op::And) {
      for (const auto& inner : c.args()) kept.push_back(inner);
    } else {
      kept.push_back(std::move(c));
    }
  }
  if (absorbed) {
    if (kept.empty()) return bool_const(false);
    kept.push_back(bool_const(false));
  }
  if (kept.empty()) return bool_const(true);
  if (kept.size() == 1) return kept.front();
  return Formula::make(Op::And, Sort::Bool, std::move(kept));
}

Formula mk_or(std::vector<Formula> disjuncts) {
  std::vector<Formula> kept;
  bool absorbed = false;
  for (auto& d : disjuncts) {
    require_sort(d, Sort::Bool, "||");
    if (d.is_false()) continue;
    if (d.is_true()) {
      absorbed = true;
      continue;
    }
    if (d.op() == Op::Or) {
      for (const auto& inner : d.args()) kept.push_back(inner);
    } else {
      kept.push_back(std::move(d));
    }
  }
  if (absorbed) {
    if (kept.empty()) return bool_const(true);
    kept.push_back(bool_const(true));
  }
  if (kept.empty()) return bool_const(false);
  if (kept.size() == 1) return kept.front();
  return Formula::make(Op::Or, Sort::Bool, std::move(kept));
}

Formula mk_and(Formula a, Formula b) { return mk_and(std::vector<Formula>{std::move(a), std::move(b)}); }
Formula mk_or(Formula a, Formula b) { return mk_or(std::vector<Formula>{std::move(a), std::move(b)}); }

Formula mk_not(Formula a) {
  require_sort(a, Sort::Bool, "!");
  switch (a.op()) {
    case Op::BoolConst: return bool_const(!a.bool_value());
    case Op::Not: return a.arg(0);
    // Negated comparisons become the complementary comparison.
    case Op::Lt: return Formula::make(Op::Ge, Sort::Bool, a.args());
    case Op::Le: return Formula::make(Op::Gt, Sort::Bool, a.args());
    case Op::Gt: return Formula::make(Op::Le, Sort::Bool, a.args());
    case Op::Ge: return Formula::make(Op::Lt, Sort::Bool, a.args());
    case Op::Eq: return Formula::make(Op::Ne, Sort::Bool, a.args());
    case Op::Ne: return Formula::make(Op::Eq, Sort::Bool, a.args());
    default: return Formula::make(Op::Not, Sort::Bool, {std::move(a)});
  }
}

Formula implies(Formula a, Formula b) {
  require_sort(a, Sort::Bool, "=>");
  require_sort(b, Sort::Bool, "=>");
  if (a.is_true()) return b;
  if (b.is_false()) return mk_not(std::move(a));
  if ((a.is_false() || b.is_true()) && a.is_const() && b.is_const()) return bool_const(true);
  return Formula::make(Op::Implies, Sort::Bool, {std::move(a), std::move(b)});
}

Formula ite(Formula c, Formula t, Formula e) {
  require_sort(c, Sort::Bool, "ite");
  if (t.sort() != e.sort()) throw SortError("ite: branches differ in sort");
  if (c.is_true() && e.is_const()) return t;
  if (c.is_false() && t.is_const()) return e;
  Sort s = t.sort();
  return Formula::make(Op::Ite, s, {std::move(c), std::move(t), std::move(e)});
}

Formula forall(std::vector<SortedVar> vars, Formula body) {
  require_sort(body, Sort::Bool, "forall");
  if (vars.empty()) return body;
  return Formula::make(Op::Forall, Sort::Bool, {std::move(body)}, 0, {}, std::move(vars));
}

Formula exists(std::vector<SortedVar> vars, Formula body) {
  require_sort(body, Sort::Bool, "exists");
  if (vars.empty()) return body;
  return Formula::make(Op::Exists, Sort::Bool, {std::move(body)}, 0, {}, std::move(vars));
}

// ---------------------------------------------------------------------------

namespace {

using FvMemo = std::unordered_map<const Formula::Node*, std::map<std::string, Sort>>;

const std::map<std::string, Sort>& fv(const Formula& f, FvMemo& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  std::map<std::string, Sort> out;
  if (f.op() == Op::Var) {
    out.emplace(f.name(), f.sort());
  } else {
    for (const auto& a : f.args()) {
      const auto& sub = fv(a, memo);
      out.insert(sub.begin(), sub.end());
    }
    for (const auto& b : f.binders()) out.erase(b.name);
  }
  return memo.emplace(f.id(), std::move(out)).first->second;
}

}  // namespace

std::map<std::string, Sort> free_vars(const Formula& f) {
  FvMemo memo;
  return fv(f, memo);
}

bool occurs_free(const Formula& f, const std::string& name) { return free_vars(f).count(name) > 0; }

namespace {

class Substituter {
 public:
  explicit Substituter(std::map<std::string, Formula> binding) : binding_(std::move(binding)) {
    for (const auto& [name, repl] : binding_) {
      for (const auto& v : fv(repl, fv_memo_)) repl_free_.insert(v.first);
    }
  }

  Formula run(const Formula& f) {
    if (binding_.empty()) return f;
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    Formula out = apply(f);
    memo_.emplace(f.id(), out);
    return out;
  }

 private:
  Formula apply(const Formula& f) {
    switch (f.op()) {
      case Op::IntConst:
      case Op::BoolConst: return f;
      case Op::Var: {
        auto it = binding_.find(f.name());
        if (it == binding_.end()) return f;
        if (it->second.sort() != f.sort())
          throw SortError("substitute: '" + f.name() + "' has sort " + std::string(to_string(f.sort())) +
                          " but replacement " + to_text(it->second) + " has sort " +
                          std::string(to_string(it->second.sort())));
        return it->second;
      }
      case Op::Forall:
      case Op::Exists: return quantifier(f);
      default: break;
    }
    const auto& fvs = fv(f, fv_memo_);
    bool touched = false;
    for (const auto& [name, _] : binding_)
      if (fvs.count(name)) {
        touched = true;
        break;
      }
    if (!touched) return f;
    std::vector<Formula> args;
    args.reserve(f.args().size());
    for (const auto& a : f.args()) args.push_back(run(a));
    return rebuild(f, std::move(args));
  }

  Formula quantifier(const Formula& f) {
    std::map<std::string, Formula> inner = binding_;
    std::vector<SortedVar> binders = f.binders();
    std::map<std::string, Formula> renames;
    for (auto& b : binders) {
      inner.erase(b.name);
      if (repl_free_.count(b.name)) {
        std::string fresh = b.name;
        int k = 0;
        const auto& body_fv = fv(f.arg(0), fv_memo_);
        do {
          fresh = b.name + "!" + std::to_string(++k);
        } while (repl_free_.count(fresh) || body_fv.count(fresh));
        renames.emplace(b.name, var(fresh, b.sort));
        b.name = fresh;
      }
    }
    Formula body = f.arg(0);
    if (!renames.empty()) body = substitute(body, renames);
    body = Substituter(std::move(inner)).run(body);
    return f.op() == Op::Forall ? forall(std::move(binders), std::move(body))
                                : exists(std::move(binders), std::move(body));
  }

  static Formula rebuild(const Formula& f, std::vector<Formula> a) {
    switch (f.op()) {
      case Op::Add: return add(a[0], a[1]);
      case Op::Sub: return sub(a[0], a[1]);
      case Op::Mul: return mul(a[0], a[1]);
      case Op::Neg: return neg(a[0]);
      case Op::Lt: return lt(a[0], a[1]);
      case Op::Le: return le(a[0], a[1]);
      case Op::Gt: return gt(a[0], a[1]);
      case Op::Ge: return ge(a[0], a[1]);
      case Op::Eq: return eq(a[0], a[1]);
      case Op::Ne: return ne(a[0], a[1]);
      case Op::And: return mk_and(std::move(a));
      case Op::Or: return mk_or(std::move(a));
      case Op::Not: return mk_not(a[0]);
      case Op::Implies: return implies(a[0], a[1]);
      case Op::Ite: return ite(a[0], a[1], a[2]);
      default: return f;
    }
  }

  std::map<std::string, Formula> binding_;
  std::set<std::string> repl_free_;
  FvMemo fv_memo_;
  std::unordered_map<const Formula::Node*, Formula> memo_;
};

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, Formula>& binding) {
  return Substituter(binding).run(f);
}

// ---------------------------------------------------------------------------

namespace {

std::string_view infix(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Implies: return "=>";
    default: return "?";
  }
}

void binders_text(std::ostream& os, const std::vector<SortedVar>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) os << ", ";
    os << vs[i].name << ':' << to_string(vs[i].sort);
  }
}

void text(std::ostream& os, const Formula& f) {
  switch (f.op()) {
    case Op::IntConst: os << f.int_value(); return;
    case Op::BoolConst: os << (f.bool_value() ? "true" : "false"); return;
    case Op::Var: os << f.name(); return;
    case Op::Neg: os << "(-"; text(os, f.arg(0)); os << ')'; return;
    case Op::Not: os << '!'; text(os, f.arg(0)); return;
    case Op::Ite:
      os << '(';
      text(os, f.arg(0));
      os << " ? ";
      text(os, f.arg(1));
      os << " : ";
      text(os, f.arg(2));
      os << ')';
      return;
    case Op::Forall:
    case Op::Exists:
      os << (f.op() == Op::Forall ? "forall " : "exists ");
      binders_text(os, f.binders());
      os << ". ";
      text(os, f.arg(0));
      return;
    default: break;
  }
  os << '(';
  for (std::size_t i = 0; i < f.args().size(); ++i) {
    if (i) os << ' ' << infix(f.op()) << ' ';
    text(os, f.arg(i));
  }
  os << ')';
}

std::int64_t checked(Op op, std::int64_t a, std::int64_t b) {
  if (auto v = fold_arith(op, a, b)) return *v;
  throw Error("evaluate: integer overflow");
}

Value eval(const Formula& f, const Valuation& env) {
  auto i = [&](std::size_t k) { return std::get<std::int64_t>(eval(f.arg(k), env)); };
  auto b = [&](std::size_t k) { return std::get<bool>(eval(f.arg(k), env)); };
  switch (f.op()) {
    case Op::IntConst: return f.int_value();
    case Op::BoolConst: return f.bool_value();
    case Op::Var: {
      auto it = env.find(f.name());
      if (it == env.end()) throw Error("evaluate: unbound variable '" + f.name() + "'");
      return it->second;
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul: {
      auto l = i(0);
      return checked(f.op(), l, i(1));
    }
    case Op::Neg: return checked(Op::Sub, 0, i(0));
    case Op::Lt: { auto l = i(0); return l < i(1); }
    case Op::Le: { auto l = i(0); return l <= i(1); }
    case Op::Gt: { auto l = i(0); return l > i(1); }
    case Op::Ge: { auto l = i(0); return l >= i(1); }
    case Op::Eq: { Value l = eval(f.arg(0), env); return l == eval(f.arg(1), env); }
    case Op::Ne: { Value l = eval(f.arg(0), env); return l != eval(f.arg(1), env); }
    case Op::And:
      for (std::size_t k = 0; k < f.args().size(); ++k)
        if (!b(k)) return false;
      return true;
    case Op::Or:
      for (std::size_t k = 0; k < f.args().size(); ++k)
        if (b(k)) return true;
      return false;
    case Op::Not: return !b(0);
    case Op::Implies: return !b(0) || b(1);
    case Op::Ite: return b(0) ? eval(f.arg(1), env) : eval(f.arg(2), env);
    case Op::Forall:
    case Op::Exists: throw Error("evaluate: quantified formula needs a domain");
  }
  return false;
}

}  // namespace

std::string to_text(const Formula& f) {
  std::ostringstream os;
  text(os, f);
  return os.str();
}

Value evaluate(const Formula& f, const Valuation& env) { return eval(f, env); }

std::size_t dag_size(const Formula& f) {
  std::unordered_set<const Formula::Node*> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!seen.insert(g.id()).second) return;
    for (const auto& a : g.args()) walk(a);
  };
  walk(f);
  return seen.size();
}

}  // namespace floc::logic
