#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "floc/common.hpp"

namespace floc::logic {

enum class Op {
  IntConst,
  BoolConst,
  Var,
  Add,
  Sub,
  Mul,
  Neg,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  And,
  Or,
  Not,
  Implies,
  Ite,
  Forall,
  Exists,
};

struct SortedVar {
  std::string name;
  Sort sort = Sort::Int;

  auto operator<=>(const SortedVar&) const = default;
};

/// Immutable first-order term/formula over int and bool. Copies share
/// structure, so substitution results are DAGs rather than trees.
class Formula {
 public:
  struct Node;

  Formula();  // the constant `true`

  Op op() const;
  Sort sort() const;
  std::int64_t int_value() const;
  bool bool_value() const;
  const std::string& name() const;
  const std::vector<Formula>& args() const;
  const std::vector<SortedVar>& binders() const;
  const Formula& arg(std::size_t i) const { return args()[i]; }

  bool is_true() const { return op() == Op::BoolConst && bool_value(); }
  bool is_false() const { return op() == Op::BoolConst && !bool_value(); }
  bool is_const() const { return op() == Op::IntConst || op() == Op::BoolConst; }

  const Node* id() const { return node_.get(); }

  static Formula make(Op op, Sort sort, std::vector<Formula> args, std::int64_t value = 0,
                      std::string name = {}, std::vector<SortedVar> binders = {});

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Structural equality (exact, no alpha-renaming).
bool equal(const Formula& a, const Formula& b);

// Constructors. They fold literal-only subterms and boolean identities with
// constant operands; they never rewrite through variables.
Formula int_const(std::int64_t v);
Formula bool_const(bool v);
Formula var(std::string name, Sort sort);
Formula var(const SortedVar& v);
Formula add(Formula a, Formula b);
Formula sub(Formula a, Formula b);
Formula mul(Formula a, Formula b);
Formula neg(Formula a);
Formula lt(Formula a, Formula b);
Formula le(Formula a, Formula b);
Formula gt(Formula a, Formula b);
Formula ge(Formula a, Formula b);
Formula eq(Formula a, Formula b);
Formula ne(Formula a, Formula b);
Formula mk_and(std::vector<Formula> conjuncts);
Formula mk_or(std::vector<Formula> disjuncts);
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_not(Formula a);
Formula implies(Formula a, Formula b);
Formula ite(Formula c, Formula t, Formula e);
Formula forall(std::vector<SortedVar> vars, Formula body);
Formula exists(std::vector<SortedVar> vars, Formula body);

class SortError : public Error {
 public:
  using Error::Error;
};

/// Free variables with their sorts.
std::map<std::string, Sort> free_vars(const Formula& f);
bool occurs_free(const Formula& f, const std::string& name);

/// Capture-avoiding simultaneous substitution. Throws SortError when a
/// replacement's sort differs from the variable it replaces.
Formula substitute(const Formula& f, const std::map<std::string, Formula>& binding);

/// Canonical, fully parenthesized text.
std::string to_text(const Formula& f);

/// Evaluates a quantifier-free formula. Throws Error on a free variable that
/// is not in `env`, and on int64 overflow.
Value evaluate(const Formula& f, const Valuation& env);

/// Number of distinct nodes (DAG size).
std::size_t dag_size(const Formula& f);

// ---------------------------------------------------------------------------
// Queries

class UnclassifiedVariable : public Error {
 public:
  explicit UnclassifiedVariable(const std::string& name)
      : Error("unclassified free variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// The classified repairability/verification question
/// forall inputs. exists placeholder. forall auxiliaries. body.
struct QuantifiedQuery {
  std::vector<SortedVar> inputs;
  std::optional<SortedVar> placeholder;
  std::vector<SortedVar> auxiliaries;
  Formula body;

  /// The closed sentence; empty binder blocks are omitted.
  Formula closure() const;
};

QuantifiedQuery build_query(Formula body, std::vector<SortedVar> inputs,
                            std::optional<SortedVar> placeholder, std::vector<SortedVar> auxiliaries);

// ---------------------------------------------------------------------------
// Verdicts

enum class UnknownReason { None, Timeout, Resource, ProverUnknown, Crash };

std::string_view to_string(UnknownReason r);

struct Verdict {
  enum class Kind { Valid, Invalid, Unknown };
  Kind kind = Kind::Valid;
  // Valuation of the outermost universal block, when available.
  std::optional<std::vector<std::pair<std::string, Value>>> witness;
  UnknownReason reason = UnknownReason::None;
  std::string detail;

  static Verdict valid() { return {}; }
  static Verdict invalid(std::optional<std::vector<std::pair<std::string, Value>>> w = std::nullopt) {
    Verdict v;
    v.kind = Kind::Invalid;
    v.witness = std::move(w);
    return v;
  }
  static Verdict unknown(UnknownReason r, std::string detail = {}) {
    Verdict v;
    v.kind = Kind::Unknown;
    v.reason = r;
    v.detail = std::move(detail);
    return v;
  }

  bool is_valid() const { return kind == Kind::Valid; }
  bool is_invalid() const { return kind == Kind::Invalid; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

std::string_view to_string(Verdict::Kind k);

}  // namespace floc::logic
