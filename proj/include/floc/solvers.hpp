#pragma once

#include <string>

#include "floc/logic.hpp"

namespace floc::solvers {

enum class Backend { Internal, External };

struct SolverConfig {
  Backend backend = Backend::Internal;
  std::string prover_command;  // external only; FLOC_PROVER overrides
  int bound = 8;               // internal: ints range over [-bound, bound]
  int placeholder_bound = 0;   // 0 means "same as bound"
  double timeout_sec = 10.0;   // per query

  int effective_placeholder_bound() const { return placeholder_bound > 0 ? placeholder_bound : bound; }

  /// Throws Error when a field is out of range.
  void validate() const;

  /// Report tag: `bounded[-B,B]` or `unbounded(prover)`.
  std::string semantics() const;
};

class ProverLaunchFailure : public Error {
 public:
  using Error::Error;
};

class MalformedProverOutput : public Error {
 public:
  using Error::Error;
};

class UnsupportedConstruct : public Error {
 public:
  using Error::Error;
};

/// forall inputs, auxiliaries. body  (no placeholder). An Invalid witness
/// assigns every input and auxiliary (internal backend only).
logic::Verdict decide_universal(const logic::QuantifiedQuery& q, const SolverConfig& cfg);

/// forall inputs. exists placeholder. forall auxiliaries. body. An Invalid
/// witness assigns every input (internal backend only).
logic::Verdict decide_forall_exists(const logic::QuantifiedQuery& q, const SolverConfig& cfg);

/// Dispatches on whether `q` has a placeholder.
logic::Verdict decide(const logic::QuantifiedQuery& q, const SolverConfig& cfg);

// Internal backend: exhaustive search over [-bound, bound] (placeholder over
// [-Bc, Bc]), pruning with three-valued evaluation of partial assignments.
logic::Verdict enumerate_universal(const logic::QuantifiedQuery& q, const SolverConfig& cfg);
logic::Verdict enumerate_forall_exists(const logic::QuantifiedQuery& q, const SolverConfig& cfg);

/// SMT-LIB2 script asserting the negation of q's closure.
std::string emit_smtlib(const logic::QuantifiedQuery& q);

/// Prover command after applying the FLOC_PROVER override.
std::string prover_command(const SolverConfig& cfg);

/// Runs `command file` on an SMT-LIB script and maps the first output line.
/// sat of the negated sentence is Invalid (without a witness).
logic::Verdict run_prover(const std::string& command, const std::string& script, double timeout_sec);

}  // namespace floc::solvers
