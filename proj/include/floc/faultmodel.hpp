#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "floc/ast.hpp"
#include "floc/logic.hpp"
#include "floc/normalizer.hpp"

namespace floc::faultmodel {

enum class SiteKind { Init, Assign, IfCond, WhileCond, Return };

std::string_view to_string(SiteKind kind);

/// One step from a statement list into a statement: `index` selects the
/// statement, `else_branch` selects which nested list the next step enters.
struct PathStep {
  std::size_t index = 0;
  bool else_branch = false;

  bool operator==(const PathStep&) const = default;
};

struct Candidate {
  int id = 0;  // 1-based, program order
  SiteKind kind = SiteKind::Init;
  Sort sort = Sort::Int;
  std::vector<PathStep> path;  // to the statement holding the site
  Expr expr;                   // the expression at the site
  bool loop_scoped = false;    // evaluated once per iteration
  std::string placeholder;     // fresh variable name used by instrument()
  normalizer::LocationDescription location;
};

/// Candidate sites of normalized function `f` in program order: declaration
/// initializers, assignment right-hand sides, if and while conditions, and
/// return values. Call results are not candidates; their contracts summarize
/// them. `p` is consulted so placeholder names avoid every identifier in use.
std::vector<Candidate> enumerate_candidates(const Program& p, const FunctionDef& f,
                                            const normalizer::SourceMap& map);

struct Instrumented {
  FunctionDef function;
  logic::SortedVar placeholder;
};

/// Copy of `f` with the candidate's expression replaced by its placeholder.
Instrumented instrument(const FunctionDef& f, const Candidate& c);

/// Copy of `f` with the candidate's expression replaced by `replacement`.
FunctionDef replace_site(const FunctionDef& f, const Candidate& c, Expr replacement);

const Stmt& site_stmt(const FunctionDef& f, const std::vector<PathStep>& path);

}  // namespace floc::faultmodel
