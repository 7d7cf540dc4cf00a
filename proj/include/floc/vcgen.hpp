#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floc/ast.hpp"
#include "floc/logic.hpp"

namespace floc::vcgen {

enum class ObligationKind { PostHolds, LoopInvInit, LoopInvPreserved, CalleePreHolds };

std::string_view to_string(ObligationKind kind);

struct Obligation {
  std::string id;  // <function>.<post|loop_init|loop_preserved|callee_pre>.<index>
  ObligationKind kind = ObligationKind::PostHolds;
  int index = 0;
  logic::Formula body;
  std::vector<logic::SortedVar> inputs;
  std::optional<logic::SortedVar> placeholder;
  std::vector<logic::SortedVar> auxiliaries;
  Span span;

  logic::QuantifiedQuery query() const;
};

/// Name of the auxiliary that snapshots global `g` at function entry.
std::string old_name(std::string_view global);

/// Translates an MCL expression. Constant globals become their literal,
/// `\result` becomes the variable `\result`, `\old(g)` becomes old_name(g).
/// Calls are rejected (they are summarized at statement level).
logic::Formula to_formula(const Program& p, const Expr& e);

struct WpResult {
  logic::Formula post;              // wp of the block w.r.t. `post`
  std::vector<Obligation> side;     // loop and call goals, no entry antecedent
};

/// Weakest precondition of a normalized statement list. `f` supplies the
/// ensures clauses used by return statements.
WpResult wp(const Program& p, const FunctionDef& f, const std::vector<Stmt>& body, logic::Formula post);

/// Proof obligations for normalized function `f`, each of the form
/// requires => goal. `placeholder` names the fresh variable an instrumented
/// body uses in place of a candidate expression; it is classified separately
/// from inputs and auxiliaries. Order: post, loop init, loop preserved,
/// callee pre, each in program order.
std::vector<Obligation> gen_obligations(const Program& p, const FunctionDef& f,
                                        std::optional<logic::SortedVar> placeholder = std::nullopt);

}  // namespace floc::vcgen
