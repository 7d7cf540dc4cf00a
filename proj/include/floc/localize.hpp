#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "floc/faultmodel.hpp"
#include "floc/logic.hpp"
#include "floc/normalizer.hpp"
#include "floc/solvers.hpp"
#include "floc/vcgen.hpp"

namespace floc::localize {

enum class Mode { PerObligation, Conjunction };
enum class Overall { Reported, NotRepairable, Inconclusive };

std::string_view to_string(Mode mode);
std::string_view to_string(Overall overall);

struct ObligationResult {
  std::string id;
  logic::Verdict verdict;
  double time_sec = 0;
};

struct Detection {
  // Invalid if any obligation is Invalid, else Unknown if any is Unknown.
  logic::Verdict verdict;
  std::vector<ObligationResult> obligations;
};

struct CandidateResult {
  faultmodel::Candidate candidate;
  std::vector<ObligationResult> obligations;
  Overall overall = Overall::NotRepairable;
  double time_sec = 0;
};

struct LocalizationReport {
  std::string function;
  Detection detection;
  std::vector<CandidateResult> candidates;
  std::vector<normalizer::LocationDescription> reported;  // Reported candidates, program order
  Mode mode = Mode::PerObligation;
  std::string semantics;
  int bound = 8;
  double detect_sec = 0;
  double total_sec = 0;
};

struct Config {
  solvers::SolverConfig solver;
  Mode mode = Mode::PerObligation;
  int workers = 1;
};

/// Decides every obligation of normalized `f` (no placeholder).
Detection verify(const Program& p, const FunctionDef& f, const solvers::SolverConfig& cfg);

/// One query whose body conjoins every obligation body (sharing one placeholder).
logic::QuantifiedQuery conjoined_query(const std::vector<vcgen::Obligation>& obligations);

/// Repairability of one candidate of normalized `f`.
CandidateResult check_candidate(const Program& p, const FunctionDef& f, const faultmodel::Candidate& c,
                                const Config& cfg);

/// Verifies `f` (a function of np.program); when it is not Valid, checks
/// every candidate. Any Unknown detection verdict is treated as incorrect.
LocalizationReport localize(const normalizer::NormProgram& np, const FunctionDef& f, const Config& cfg);

}  // namespace floc::localize
