#include <cstdlib>

#include "floc/solvers.hpp"

namespace floc::solvers {

void SolverConfig::validate() const {
  if (bound < 1) throw Error("bound must be at least 1");
  if (placeholder_bound < 0) throw Error("placeholder bound must be at least 1");
  if (!(timeout_sec > 0)) throw Error("timeout must be positive");
}

std::string SolverConfig::semantics() const {
  if (backend == Backend::External) return "unbounded(prover)";
  return "bounded[-" + std::to_string(bound) + "," + std::to_string(bound) + "]";
}

std::string prover_command(const SolverConfig& cfg) {
  if (const char* env = std::getenv("FLOC_PROVER"); env && *env) return env;
  return cfg.prover_command;
}

logic::Verdict decide_universal(const logic::QuantifiedQuery& q, const SolverConfig& cfg) {
  if (q.placeholder) throw Error("decide_universal: query has a placeholder");
  if (cfg.backend == Backend::Internal) return enumerate_universal(q, cfg);
  return run_prover(prover_command(cfg), emit_smtlib(q), cfg.timeout_sec);
}

logic::Verdict decide_forall_exists(const logic::QuantifiedQuery& q, const SolverConfig& cfg) {
  if (!q.placeholder) throw Error("decide_forall_exists: query has no placeholder");
  if (cfg.backend == Backend::Internal) return enumerate_forall_exists(q, cfg);
  return run_prover(prover_command(cfg), emit_smtlib(q), cfg.timeout_sec);
}

logic::Verdict decide(const logic::QuantifiedQuery& q, const SolverConfig& cfg) {
  return q.placeholder ? decide_forall_exists(q, cfg) : decide_universal(q, cfg);
}

}  // namespace floc::solvers
