#include <set>

#include "floc/faultmodel.hpp"

namespace floc::faultmodel {

std::string_view to_string(SiteKind kind) {
  switch (kind) {
    case SiteKind::Init: return "init";
    case SiteKind::Assign: return "assign";
    case SiteKind::IfCond: return "if-cond";
    case SiteKind::WhileCond: return "while-cond";
    case SiteKind::Return: return "return";
  }
  return "?";
}

namespace {

void collect_names(const std::vector<Stmt>& body, std::set<std::string>& names) {
  for (const auto& s : body) {
    if (s.kind == StmtKind::VarDecl) names.insert(s.name);
    collect_names(s.body, names);
    collect_names(s.else_body, names);
  }
}

std::set<std::string> names_in_use(const Program& p, const FunctionDef& f) {
  std::set<std::string> names;
  for (const auto& g : p.globals) names.insert(g.name);
  for (const auto& fn : p.functions) names.insert(fn.name);
  for (const auto& prm : f.params) names.insert(prm.name);
  collect_names(f.body, names);
  return names;
}

class Walker {
 public:
  Walker(const normalizer::SourceMap& map, std::set<std::string> taken) : map_(map), taken_(std::move(taken)) {}

  void walk(const std::vector<Stmt>& body, std::vector<PathStep>& path, bool in_loop) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Stmt& s = body[i];
      path.push_back({i, false});
      switch (s.kind) {
        case StmtKind::VarDecl:
          if (s.expr && s.expr->kind != ExprKind::Call) add(SiteKind::Init, s, path, in_loop);
          break;
        case StmtKind::Assign:
          if (s.expr->kind != ExprKind::Call) add(SiteKind::Assign, s, path, in_loop);
          break;
        case StmtKind::Return:
          if (s.expr) add(SiteKind::Return, s, path, in_loop);
          break;
        case StmtKind::If:
          add(SiteKind::IfCond, s, path, in_loop);
          walk(s.body, path, in_loop);
          path.back().else_branch = true;
          walk(s.else_body, path, in_loop);
          break;
        case StmtKind::While:
          add(SiteKind::WhileCond, s, path, true);
          walk(s.body, path, true);
          break;
        case StmtKind::Block: walk(s.body, path, in_loop); break;
      }
      path.pop_back();
    }
  }

  std::vector<Candidate> out;

 private:
  void add(SiteKind kind, const Stmt& s, const std::vector<PathStep>& path, bool loop_scoped) {
    Candidate c;
    c.id = static_cast<int>(out.size()) + 1;
    c.kind = kind;
    c.expr = *s.expr;
    c.sort = c.expr.sort;
    c.path = path;
    c.path.back().else_branch = false;
    c.loop_scoped = loop_scoped;
    c.placeholder = "c" + std::to_string(c.id);
    while (taken_.count(c.placeholder)) c.placeholder += '_';
    c.location = normalizer::render_location(c.expr, map_);
    out.push_back(std::move(c));
  }

  const normalizer::SourceMap& map_;
  std::set<std::string> taken_;
};

// Works for both const and mutable statement lists.
template <typename List>
auto& locate(List& body, const std::vector<PathStep>& path) {
  List* list = &body;
  decltype(&body[0]) s = nullptr;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (path[k].index >= list->size()) throw Error("candidate path does not match the function");
    s = &(*list)[path[k].index];
    list = path[k].else_branch ? &s->else_body : &s->body;
  }
  if (!s) throw Error("empty candidate path");
  return *s;
}

}  // namespace

std::vector<Candidate> enumerate_candidates(const Program& p, const FunctionDef& f,
                                            const normalizer::SourceMap& map) {
  Walker w(map, names_in_use(p, f));
  std::vector<PathStep> path;
  w.walk(f.body, path, false);
  return std::move(w.out);
}

const Stmt& site_stmt(const FunctionDef& f, const std::vector<PathStep>& path) {
  return locate(f.body, path);
}

FunctionDef replace_site(const FunctionDef& f, const Candidate& c, Expr replacement) {
  FunctionDef out = f;
  Stmt& s = locate(out.body, c.path);
  if (!s.expr || !same_shape(*s.expr, c.expr)) throw Error("candidate site does not match the function");
  replacement.span = s.expr->span;
  s.expr = std::move(replacement);
  return out;
}

Instrumented instrument(const FunctionDef& f, const Candidate& c) {
  Instrumented out{replace_site(f, c, Expr::var(c.placeholder, c.sort)), {c.placeholder, c.sort}};
  return out;
}

}  // namespace floc::faultmodel
