#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>

#include "floc/solvers.hpp"

namespace floc::solvers {

using logic::Formula;
using logic::Op;

namespace {

bool simple_symbol_char(char ch) {
  if (std::isalnum(static_cast<unsigned char>(ch))) return true;
  return std::string_view("~!@$%^&*_-+=<>.?/").find(ch) != std::string_view::npos;
}

std::string symbol(const std::string& raw) {
  for (char ch : raw)
    if (!simple_symbol_char(ch)) return "|" + raw + "|";
  return raw;
}

std::string_view sort_name(Sort s) { return s == Sort::Bool ? "Bool" : "Int"; }

bool nonlinear(const Formula& f) {
  if (f.op() == Op::Mul && !f.arg(0).is_const() && !f.arg(1).is_const()) return true;
  for (const auto& a : f.args())
    if (nonlinear(a)) return true;
  return false;
}

class Emitter {
 public:
  explicit Emitter(const logic::QuantifiedQuery& q) {
    for (const auto& v : q.inputs) names_[v.name] = symbol("i_" + v.name);
    if (q.placeholder) names_[q.placeholder->name] = symbol("c_" + q.placeholder->name);
    for (const auto& v : q.auxiliaries) names_[v.name] = symbol("t_" + v.name);
  }

  void emit(std::ostream& os, const Formula& f) {
    switch (f.op()) {
      case Op::IntConst:
        if (f.int_value() < 0) {
          // -(2^63) has no positive counterpart; spell it as a difference.
          if (f.int_value() == INT64_MIN)
            os << "(- (- " << INT64_MAX << ") 1)";
          else
            os << "(- " << -f.int_value() << ')';
        } else {
          os << f.int_value();
        }
        return;
      case Op::BoolConst: os << (f.bool_value() ? "true" : "false"); return;
      case Op::Var: {
        auto it = names_.find(f.name());
        if (it == names_.end()) throw UnsupportedConstruct("unclassified variable '" + f.name() + "'");
        os << it->second;
        return;
      }
      case Op::Ne:
        os << "(not (= ";
        emit(os, f.arg(0));
        os << ' ';
        emit(os, f.arg(1));
        os << "))";
        return;
      case Op::Forall:
      case Op::Exists: {
        os << '(' << (f.op() == Op::Forall ? "forall" : "exists") << " (";
        for (std::size_t i = 0; i < f.binders().size(); ++i) {
          if (i) os << ' ';
          os << '(' << names_.at(f.binders()[i].name) << ' ' << sort_name(f.binders()[i].sort) << ')';
        }
        os << ") ";
        emit(os, f.arg(0));
        os << ')';
        return;
      }
      default: break;
    }
    os << '(' << head(f.op());
    for (const auto& a : f.args()) {
      os << ' ';
      emit(os, a);
    }
    os << ')';
  }

 private:
  static std::string_view head(Op op) {
    switch (op) {
      case Op::Add: return "+";
      case Op::Sub:
      case Op::Neg: return "-";
      case Op::Mul: return "*";
      case Op::Lt: return "<";
      case Op::Le: return "<=";
      case Op::Gt: return ">";
      case Op::Ge: return ">=";
      case Op::Eq: return "=";
      case Op::And: return "and";
      case Op::Or: return "or";
      case Op::Not: return "not";
      case Op::Implies: return "=>";
      case Op::Ite: return "ite";
      default: throw UnsupportedConstruct("operator has no SMT-LIB head");
    }
  }

  std::map<std::string, std::string> names_;
};

}  // namespace

std::string emit_smtlib(const logic::QuantifiedQuery& q) {
  std::ostringstream os;
  os << "(set-logic " << (nonlinear(q.body) ? "NIA" : "LIA") << ")\n";
  os << "(assert (not ";
  Emitter(q).emit(os, q.closure());
  os << "))\n(check-sat)\n(get-model)\n";
  return os.str();
}

}  // namespace floc::solvers
