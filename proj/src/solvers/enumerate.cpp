#include <chrono>
#include <unordered_map>

#include "floc/solvers.hpp"

namespace floc::solvers {

using logic::Formula;
using logic::Op;
using logic::Verdict;

namespace {

struct Abort {
  logic::UnknownReason reason;
  std::string detail;
};

// Quantifier-free formula flattened into topological order. Values are
// three-valued: a node is either known or depends on an unassigned variable.
class Compiled {
 public:
  Compiled(const Formula& f, const std::unordered_map<std::string, int>& slots) {
    root_ = add(f, slots);
    known_.resize(nodes_.size());
    value_.resize(nodes_.size());
  }

  // Returns -1 when the value is not yet determined, else 0 or 1.
  int eval(const std::vector<char>& assigned, const std::vector<std::int64_t>& values) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) step(i, assigned, values);
    return known_[root_] ? static_cast<int>(value_[root_]) : -1;
  }

 private:
  struct Node {
    Op op;
    std::int64_t value;  // constant value or variable slot
    std::vector<int> args;
  };

  int add(const Formula& f, const std::unordered_map<std::string, int>& slots) {
    if (auto it = index_.find(f.id()); it != index_.end()) return it->second;
    Node n{f.op(), 0, {}};
    switch (f.op()) {
      case Op::IntConst:
      case Op::BoolConst: n.value = f.int_value(); break;
      case Op::Var: {
        auto it = slots.find(f.name());
        if (it == slots.end()) throw Error("enumerator: unclassified variable '" + f.name() + "'");
        n.value = it->second;
        break;
      }
      case Op::Forall:
      case Op::Exists: throw Error("enumerator: nested quantifier in query body");
      default:
        for (const auto& a : f.args()) n.args.push_back(add(a, slots));
    }
    nodes_.push_back(std::move(n));
    int id = static_cast<int>(nodes_.size()) - 1;
    index_.emplace(f.id(), id);
    return id;
  }

  static std::int64_t checked(Op op, std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    bool overflow = false;
    switch (op) {
      case Op::Add: overflow = __builtin_add_overflow(a, b, &out); break;
      case Op::Sub: overflow = __builtin_sub_overflow(a, b, &out); break;
      case Op::Mul: overflow = __builtin_mul_overflow(a, b, &out); break;
      default: break;
    }
    if (overflow) throw Abort{logic::UnknownReason::Resource, "integer overflow during enumeration"};
    return out;
  }

  void set(std::size_t i, bool known, std::int64_t v = 0) {
    known_[i] = known;
    value_[i] = v;
  }

  void step(std::size_t i, const std::vector<char>& assigned, const std::vector<std::int64_t>& values) {
    const Node& n = nodes_[i];
    auto k = [&](int a) { return known_[static_cast<std::size_t>(a)] != 0; };
    auto v = [&](int a) { return value_[static_cast<std::size_t>(a)]; };
    switch (n.op) {
      case Op::IntConst:
      case Op::BoolConst: set(i, true, n.value); return;
      case Op::Var: {
        auto s = static_cast<std::size_t>(n.value);
        set(i, assigned[s] != 0, values[s]);
        return;
      }
      case Op::Add:
      case Op::Sub:
      case Op::Mul: {
        int a = n.args[0], b = n.args[1];
        if (n.op == Op::Mul && ((k(a) && v(a) == 0) || (k(b) && v(b) == 0))) return set(i, true, 0);
        if (k(a) && k(b)) return set(i, true, checked(n.op, v(a), v(b)));
        return set(i, false);
      }
      case Op::Neg:
        if (k(n.args[0])) return set(i, true, checked(Op::Sub, 0, v(n.args[0])));
        return set(i, false);
      case Op::Lt:
      case Op::Le:
      case Op::Gt:
      case Op::Ge:
      case Op::Eq:
      case Op::Ne: {
        int a = n.args[0], b = n.args[1];
        if (!k(a) || !k(b)) return set(i, false);
        std::int64_t x = v(a), y = v(b);
        bool r = n.op == Op::Lt   ? x < y
                 : n.op == Op::Le ? x <= y
                 : n.op == Op::Gt ? x > y
                 : n.op == Op::Ge ? x >= y
                 : n.op == Op::Eq ? x == y
                                  : x != y;
        return set(i, true, r);
      }
      case Op::And:
      case Op::Or: {
        const std::int64_t dominant = n.op == Op::And ? 0 : 1;
        bool all_known = true;
        for (int a : n.args) {
          if (!k(a)) {
            all_known = false;
          } else if (v(a) == dominant) {
            return set(i, true, dominant);
          }
        }
        if (all_known) return set(i, true, 1 - dominant);
        return set(i, false);
      }
      case Op::Not:
        if (k(n.args[0])) return set(i, true, 1 - v(n.args[0]));
        return set(i, false);
      case Op::Implies: {
        int a = n.args[0], b = n.args[1];
        if ((k(a) && v(a) == 0) || (k(b) && v(b) == 1)) return set(i, true, 1);
        if (k(a) && k(b)) return set(i, true, 0);
        return set(i, false);
      }
      case Op::Ite: {
        int c = n.args[0], t = n.args[1], e = n.args[2];
        if (k(c)) {
          int pick = v(c) ? t : e;
          return set(i, k(pick), v(pick));
        }
        if (k(t) && k(e) && v(t) == v(e)) return set(i, true, v(t));
        return set(i, false);
      }
      case Op::Forall:
      case Op::Exists: break;
    }
    set(i, false);
  }

  std::vector<Node> nodes_;
  std::unordered_map<const Formula::Node*, int> index_;
  int root_ = 0;
  std::vector<char> known_;
  std::vector<std::int64_t> value_;
};

struct Slot {
  logic::SortedVar var;
  bool occurs = false;  // free in the body; absent variables are not enumerated
  std::vector<std::int64_t> domain;
};

// Values in the order 0, 1, -1, 2, -2, ... so witnesses are small.
std::vector<std::int64_t> domain(Sort sort, int bound) {
  if (sort == Sort::Bool) return {0, 1};
  std::vector<std::int64_t> d{0};
  for (std::int64_t k = 1; k <= bound; ++k) {
    d.push_back(k);
    d.push_back(-k);
  }
  return d;
}

class Search {
 public:
  Search(const logic::QuantifiedQuery& q, const SolverConfig& cfg)
      : deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(cfg.timeout_sec))) {
    auto free = logic::free_vars(q.body);
    auto push = [&](const logic::SortedVar& v, int bound) {
      slots_.push_back({v, free.count(v.name) > 0, domain(v.sort, bound)});
      names_.emplace(v.name, static_cast<int>(slots_.size()) - 1);
    };
    for (const auto& v : q.inputs) push(v, cfg.bound);
    n_inputs_ = slots_.size();
    if (q.placeholder) push(*q.placeholder, cfg.effective_placeholder_bound());
    n_outer_ = slots_.size();
    for (const auto& v : q.auxiliaries) push(v, cfg.bound);
    formula_ = std::make_unique<Compiled>(q.body, names_);
    assigned_.assign(slots_.size(), 0);
    values_.assign(slots_.size(), 0);
  }

  // forall slots[from, to). body, with everything before `from` fixed.
  // On failure the failing assignment is left in values_.
  bool forall(std::size_t from, std::size_t to) {
    int r = evaluate();
    if (r >= 0) return r == 1;
    std::size_t s = next_occurring(from, to);
    if (s == to) throw Error("enumerator: undetermined body with all variables assigned");
    assigned_[s] = 1;
    for (std::int64_t v : slots_[s].domain) {
      values_[s] = v;
      if (!forall(s + 1, to)) return false;
    }
    assigned_[s] = 0;
    values_[s] = 0;
    return true;
  }

  // forall inputs. exists placeholder. forall auxiliaries. body
  bool forall_exists(std::size_t from) {
    int r = evaluate();
    if (r >= 0) return r == 1;
    std::size_t s = next_occurring(from, n_inputs_);
    if (s == n_inputs_) return exists_placeholder();
    assigned_[s] = 1;
    for (std::int64_t v : slots_[s].domain) {
      values_[s] = v;
      if (!forall_exists(s + 1)) return false;
    }
    assigned_[s] = 0;
    values_[s] = 0;
    return true;
  }

  Verdict::Kind universal() { return forall(0, slots_.size()) ? Verdict::Kind::Valid : Verdict::Kind::Invalid; }
  Verdict::Kind universal_existential() {
    return forall_exists(0) ? Verdict::Kind::Valid : Verdict::Kind::Invalid;
  }

  std::vector<std::pair<std::string, Value>> witness(std::size_t from, std::size_t to) const {
    std::vector<std::pair<std::string, Value>> w;
    for (std::size_t s = from; s < to; ++s) {
      const auto& var = slots_[s].var;
      std::int64_t v = assigned_[s] ? values_[s] : 0;
      w.emplace_back(var.name, var.sort == Sort::Bool ? Value{v != 0} : Value{v});
    }
    return w;
  }

  std::size_t n_inputs() const { return n_inputs_; }
  std::size_t n_outer() const { return n_outer_; }
  std::size_t size() const { return slots_.size(); }

 private:
  bool exists_placeholder() {
    if (n_outer_ == n_inputs_) return forall(n_outer_, slots_.size());
    const std::size_t c = n_inputs_;
    if (!slots_[c].occurs) return forall(n_outer_, slots_.size());
    const auto& dom = slots_[c].domain;
    assigned_[c] = 1;
    bool found = false;
    // The value that worked for the previous input is a good first guess.
    if (last_c_) {
      values_[c] = *last_c_;
      found = forall(n_outer_, slots_.size());
    }
    for (std::size_t k = 0; !found && k < dom.size(); ++k) {
      if (last_c_ && dom[k] == *last_c_) continue;
      clear(n_outer_, slots_.size());
      values_[c] = dom[k];
      if (forall(n_outer_, slots_.size())) {
        found = true;
        last_c_ = dom[k];
      }
    }
    clear(c, slots_.size());
    return found;
  }

  void clear(std::size_t from, std::size_t to) {
    for (std::size_t s = from; s < to; ++s) {
      assigned_[s] = 0;
      values_[s] = 0;
    }
  }

  std::size_t next_occurring(std::size_t from, std::size_t to) const {
    while (from < to && !slots_[from].occurs) ++from;
    return from;
  }

  int evaluate() {
    if ((++steps_ & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline_)
      throw Abort{logic::UnknownReason::Timeout, "bounded enumeration exceeded the time limit"};
    return formula_->eval(assigned_, values_);
  }

  std::chrono::steady_clock::time_point deadline_;
  std::vector<Slot> slots_;
  std::unordered_map<std::string, int> names_;
  std::size_t n_inputs_ = 0;
  std::size_t n_outer_ = 0;
  std::unique_ptr<Compiled> formula_;
  std::vector<char> assigned_;
  std::vector<std::int64_t> values_;
  std::optional<std::int64_t> last_c_;
  std::uint64_t steps_ = 0;
};

}  // namespace

Verdict enumerate_universal(const logic::QuantifiedQuery& q, const SolverConfig& cfg) {
  try {
    Search s(q, cfg);
    if (s.universal() == Verdict::Kind::Valid) return Verdict::valid();
    return Verdict::invalid(s.witness(0, s.size()));
  } catch (const Abort& a) {
    return Verdict::unknown(a.reason, a.detail);
  }
}

Verdict enumerate_forall_exists(const logic::QuantifiedQuery& q, const SolverConfig& cfg) {
  try {
    Search s(q, cfg);
    if (s.universal_existential() == Verdict::Kind::Valid) return Verdict::valid();
    return Verdict::invalid(s.witness(0, s.n_inputs()));
  } catch (const Abort& a) {
    return Verdict::unknown(a.reason, a.detail);
  }
}

}  // namespace floc::solvers
