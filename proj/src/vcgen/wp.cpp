#include <map>
#include <set>

#include "floc/frontend.hpp"
#include "floc/vcgen.hpp"

namespace floc::vcgen {

using logic::Formula;
using logic::SortedVar;

std::string_view to_string(ObligationKind kind) {
  switch (kind) {
    case ObligationKind::PostHolds: return "PostHolds";
    case ObligationKind::LoopInvInit: return "LoopInvInit";
    case ObligationKind::LoopInvPreserved: return "LoopInvPreserved";
    case ObligationKind::CalleePreHolds: return "CalleePreHolds";
  }
  return "?";
}

std::string old_name(std::string_view global) { return std::string(global) + "@pre"; }

logic::QuantifiedQuery Obligation::query() const {
  return logic::build_query(body, inputs, placeholder, auxiliaries);
}

namespace {

const char* const kResult = "\\result";

std::string_view id_part(ObligationKind kind) {
  switch (kind) {
    case ObligationKind::PostHolds: return "post";
    case ObligationKind::LoopInvInit: return "loop_init";
    case ObligationKind::LoopInvPreserved: return "loop_preserved";
    case ObligationKind::CalleePreHolds: return "callee_pre";
  }
  return "?";
}

Formula translate(const Program& p, const Expr& e) {
  auto op = [&](std::size_t i) { return translate(p, e.operands[i]); };
  switch (e.kind) {
    case ExprKind::IntLit: return logic::int_const(e.int_value);
    case ExprKind::BoolLit: return logic::bool_const(e.bool_value);
    case ExprKind::Var: {
      if (const GlobalDecl* g = p.find_global(e.name); g && g->is_constant) return translate(p, *g->init);
      return logic::var(e.name, e.sort);
    }
    case ExprKind::Result: return logic::var(kResult, e.sort);
    case ExprKind::Old: return logic::var(old_name(e.name), e.sort);
    case ExprKind::Neg: return logic::neg(op(0));
    case ExprKind::Not: return logic::mk_not(op(0));
    case ExprKind::Add: return logic::add(op(0), op(1));
    case ExprKind::Sub: return logic::sub(op(0), op(1));
    case ExprKind::Mul: return logic::mul(op(0), op(1));
    case ExprKind::Lt: return logic::lt(op(0), op(1));
    case ExprKind::Le: return logic::le(op(0), op(1));
    case ExprKind::Gt: return logic::gt(op(0), op(1));
    case ExprKind::Ge: return logic::ge(op(0), op(1));
    case ExprKind::Eq: return logic::eq(op(0), op(1));
    case ExprKind::Ne: return logic::ne(op(0), op(1));
    case ExprKind::And: return logic::mk_and(op(0), op(1));
    case ExprKind::Or: return logic::mk_or(op(0), op(1));
    case ExprKind::Call:
      throw Error("vcgen: call to '" + e.name + "' outside a normalized assignment at " + e.span.to_string());
  }
  return {};
}

Formula conjunction(const Program& p, const std::vector<Expr>& clauses) {
  std::vector<Formula> parts;
  for (const auto& c : clauses) parts.push_back(translate(p, c));
  return logic::mk_and(std::move(parts));
}

using Key = std::pair<ObligationKind, int>;
using Goals = std::map<Key, Formula>;

struct Site {
  int index;
  Span span;
};

class Generator {
 public:
  Generator(const Program& p, const FunctionDef& f) : p_(p), f_(f) { number(f.body); }

  Goals block(const std::vector<Stmt>& body, Goals goals) {
    for (auto it = body.rbegin(); it != body.rend(); ++it) goals = stmt(*it, std::move(goals));
    return goals;
  }

  Formula ensures() const { return conjunction(p_, f_.ensures_clauses); }

  std::map<Key, Span> spans;

 private:
  // Loops and calls are numbered in program (pre-)order.
  void number(const std::vector<Stmt>& body) {
    for (const auto& s : body) {
      if (s.kind == StmtKind::While) {
        sites_.emplace(&s, Site{loops_++, s.span});
        spans[{ObligationKind::LoopInvInit, sites_.at(&s).index}] = s.span;
        spans[{ObligationKind::LoopInvPreserved, sites_.at(&s).index}] = s.span;
      } else if (is_call(s)) {
        sites_.emplace(&s, Site{calls_++, s.span});
        spans[{ObligationKind::CalleePreHolds, sites_.at(&s).index}] = s.span;
      }
      number(s.body);
      number(s.else_body);
    }
  }

  static bool is_call(const Stmt& s) {
    return (s.kind == StmtKind::VarDecl || s.kind == StmtKind::Assign) && s.expr && s.expr->kind == ExprKind::Call;
  }

  static Goals map_goals(const Goals& goals, const std::map<std::string, Formula>& sigma) {
    Goals out;
    for (const auto& [k, g] : goals) out.emplace(k, logic::substitute(g, sigma));
    return out;
  }

  Goals stmt(const Stmt& s, Goals goals) {
    switch (s.kind) {
      case StmtKind::VarDecl:
      case StmtKind::Assign: {
        if (is_call(s)) return call(s, std::move(goals));
        Formula value = s.expr ? translate(p_, *s.expr)
                               : (s.sort == Sort::Bool ? logic::bool_const(false) : logic::int_const(0));
        return map_goals(goals, {{s.name, value}});
      }
      case StmtKind::If: {
        Formula b = translate(p_, *s.expr);
        Goals then_goals = block(s.body, goals);
        Goals else_goals = block(s.else_body, goals);
        Goals out;
        std::set<Key> keys;
        for (const auto& [k, _] : then_goals) keys.insert(k);
        for (const auto& [k, _] : else_goals) keys.insert(k);
        for (const auto& k : keys) {
          auto t = then_goals.find(k);
          auto e = else_goals.find(k);
          Formula tg = t != then_goals.end() ? t->second : logic::bool_const(true);
          Formula eg = e != else_goals.end() ? e->second : logic::bool_const(true);
          out.emplace(k, logic::mk_and(logic::implies(b, tg), logic::implies(logic::mk_not(b), eg)));
        }
        return out;
      }
      case StmtKind::While: return loop(s, std::move(goals));
      case StmtKind::Return: {
        Formula post = ensures();
        if (s.expr) post = logic::substitute(post, {{kResult, translate(p_, *s.expr)}});
        return Goals{{{ObligationKind::PostHolds, 0}, post}};
      }
      case StmtKind::Block: return block(s.body, std::move(goals));
    }
    return goals;
  }

  Goals call(const Stmt& s, Goals goals) {
    const Expr& e = *s.expr;
    const FunctionDef* callee = p_.find_function(e.name);
    if (!callee) throw Error("vcgen: unknown callee '" + e.name + "'");
    const int k = sites_.at(&s).index;

    std::map<std::string, Formula> actuals;
    for (std::size_t i = 0; i < callee->params.size(); ++i)
      actuals.emplace(callee->params[i].name, translate(p_, e.operands[i]));

    // Pure callees leave globals untouched, so \old(g) is g.
    Formula result = logic::var(e.name + "@" + std::to_string(k), callee->return_sort);
    std::map<std::string, Formula> summary = actuals;
    summary.emplace(kResult, result);
    for (const auto& g : p_.globals) {
      if (g.is_constant) continue;
      summary.emplace(old_name(g.name), logic::var(g.name, g.sort));
    }
    Formula ens = logic::substitute(conjunction(p_, callee->ensures_clauses), summary);

    Goals out;
    for (auto& [key, g] : goals) {
      if (!logic::occurs_free(g, s.name)) {
        out.emplace(key, std::move(g));
        continue;
      }
      out.emplace(key, logic::implies(ens, logic::substitute(g, {{s.name, result}})));
    }
    out[{ObligationKind::CalleePreHolds, k}] =
        logic::substitute(conjunction(p_, callee->requires_clauses), actuals);
    return out;
  }

  Goals loop(const Stmt& s, Goals goals) {
    const int k = sites_.at(&s).index;
    std::map<std::string, Sort> modified;
    std::set<std::string> local;
    collect_assigned(s.body, modified, local);
    std::map<std::string, Formula> sigma;
    for (const auto& [name, sort] : modified)
      if (!local.count(name)) sigma.emplace(name, logic::var(name + "@L" + std::to_string(k), sort));

    Formula inv = translate(p_, *s.invariant);
    Formula b = translate(p_, *s.expr);
    Formula inv_h = logic::substitute(inv, sigma);
    Formula b_h = logic::substitute(b, sigma);

    Goals inner = block(s.body, Goals{{{ObligationKind::LoopInvPreserved, k}, inv}});
    Goals out;
    for (const auto& [key, g] : inner)
      out.emplace(key, logic::implies(logic::mk_and(inv_h, b_h), logic::substitute(g, sigma)));
    for (const auto& [key, g] : goals)
      out.emplace(key, logic::implies(logic::mk_and(inv_h, logic::mk_not(b_h)), logic::substitute(g, sigma)));
    out[{ObligationKind::LoopInvInit, k}] = inv;
    return out;
  }

  static void collect_assigned(const std::vector<Stmt>& body, std::map<std::string, Sort>& assigned,
                               std::set<std::string>& declared) {
    for (const auto& s : body) {
      if (s.kind == StmtKind::Assign) assigned.emplace(s.name, s.sort);
      if (s.kind == StmtKind::VarDecl) declared.insert(s.name);
      collect_assigned(s.body, assigned, declared);
      collect_assigned(s.else_body, assigned, declared);
    }
  }

  const Program& p_;
  const FunctionDef& f_;
  std::map<const Stmt*, Site> sites_;
  int loops_ = 0;
  int calls_ = 0;
};

}  // namespace

logic::Formula to_formula(const Program& p, const Expr& e) { return translate(p, e); }

WpResult wp(const Program& p, const FunctionDef& f, const std::vector<Stmt>& body, logic::Formula post) {
  Generator gen(p, f);
  Goals goals = gen.block(body, Goals{{{ObligationKind::PostHolds, 0}, post}});
  WpResult out;
  for (const auto& [key, g] : goals) {
    if (key.first == ObligationKind::PostHolds) {
      out.post = g;
      continue;
    }
    Obligation ob;
    ob.kind = key.first;
    ob.index = key.second;
    ob.id = f.name + "." + std::string(id_part(key.first)) + "." + std::to_string(key.second);
    ob.body = g;
    ob.span = gen.spans[key];
    out.side.push_back(std::move(ob));
  }
  return out;
}

std::vector<Obligation> gen_obligations(const Program& p, const FunctionDef& f,
                                        std::optional<logic::SortedVar> placeholder) {
  Generator gen(p, f);
  gen.spans[{ObligationKind::PostHolds, 0}] = f.span;
  Goals goals = gen.block(f.body, Goals{{{ObligationKind::PostHolds, 0}, gen.ensures()}});
  Formula pre = conjunction(p, f.requires_clauses);

  std::vector<Obligation> out;
  for (const auto& [key, goal] : goals) {
    Obligation ob;
    ob.kind = key.first;
    ob.index = key.second;
    ob.id = f.name + "." + std::string(id_part(key.first)) + "." + std::to_string(key.second);
    ob.span = gen.spans[key];
    ob.placeholder = placeholder;

    std::vector<Formula> antecedent{pre};
    for (const auto& g : p.globals) {
      if (g.is_constant) continue;
      if (logic::occurs_free(goal, old_name(g.name)))
        antecedent.push_back(logic::eq(logic::var(old_name(g.name), g.sort), logic::var(g.name, g.sort)));
    }
    ob.body = logic::implies(logic::mk_and(std::move(antecedent)), goal);

    auto free = logic::free_vars(ob.body);
    for (const auto& prm : f.params) ob.inputs.push_back({prm.name, prm.sort});
    for (const auto& g : p.globals)
      if (!g.is_constant && free.count(g.name)) ob.inputs.push_back({g.name, g.sort});
    for (const auto& [name, sort] : free)
      if (name.find('@') != std::string::npos) ob.auxiliaries.push_back({name, sort});
    out.push_back(std::move(ob));
  }
  return out;
}

}  // namespace floc::vcgen
