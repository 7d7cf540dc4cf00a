#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "floc/localize.hpp"

namespace floc::localize {

std::string_view to_string(Mode mode) {
  return mode == Mode::PerObligation ? "per-obligation" : "conjunction";
}

std::string_view to_string(Overall overall) {
  switch (overall) {
    case Overall::Reported: return "Reported";
    case Overall::NotRepairable: return "NotRepairable";
    case Overall::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ObligationResult decide_timed(const std::string& id, const logic::QuantifiedQuery& q,
                              const solvers::SolverConfig& cfg) {
  auto start = Clock::now();
  logic::Verdict v = solvers::decide(q, cfg);
  return {id, std::move(v), seconds_since(start)};
}

}  // namespace

Detection verify(const Program& p, const FunctionDef& f, const solvers::SolverConfig& cfg) {
  Detection d;
  const logic::Verdict* first_unknown = nullptr;
  for (const auto& ob : vcgen::gen_obligations(p, f)) d.obligations.push_back(decide_timed(ob.id, ob.query(), cfg));
  for (const auto& r : d.obligations) {
    if (r.verdict.is_invalid()) {
      d.verdict = r.verdict;
      return d;
    }
    if (r.verdict.is_unknown() && !first_unknown) first_unknown = &r.verdict;
  }
  d.verdict = first_unknown ? *first_unknown : logic::Verdict::valid();
  return d;
}

logic::QuantifiedQuery conjoined_query(const std::vector<vcgen::Obligation>& obligations) {
  std::vector<logic::Formula> bodies;
  std::vector<logic::SortedVar> inputs;
  std::map<std::string, Sort> aux;
  std::optional<logic::SortedVar> placeholder;
  for (const auto& ob : obligations) {
    bodies.push_back(ob.body);
    for (const auto& v : ob.inputs)
      if (std::find(inputs.begin(), inputs.end(), v) == inputs.end()) inputs.push_back(v);
    for (const auto& v : ob.auxiliaries) aux.emplace(v.name, v.sort);
    if (ob.placeholder) placeholder = ob.placeholder;
  }
  std::vector<logic::SortedVar> auxiliaries;
  for (const auto& [name, sort] : aux) auxiliaries.push_back({name, sort});
  return logic::build_query(logic::mk_and(std::move(bodies)), std::move(inputs), std::move(placeholder),
                            std::move(auxiliaries));
}

CandidateResult check_candidate(const Program& p, const FunctionDef& f, const faultmodel::Candidate& c,
                                const Config& cfg) {
  auto start = Clock::now();
  CandidateResult r;
  r.candidate = c;
  auto inst = faultmodel::instrument(f, c);
  auto obligations = vcgen::gen_obligations(p, inst.function, inst.placeholder);
  if (cfg.mode == Mode::Conjunction) {
    r.obligations.push_back(decide_timed(f.name + ".all", conjoined_query(obligations), cfg.solver));
  } else {
    for (const auto& ob : obligations) r.obligations.push_back(decide_timed(ob.id, ob.query(), cfg.solver));
  }
  bool unknown = false;
  bool invalid = false;
  for (const auto& o : r.obligations) {
    invalid |= o.verdict.is_invalid();
    unknown |= o.verdict.is_unknown();
  }
  r.overall = invalid ? Overall::NotRepairable : unknown ? Overall::Inconclusive : Overall::Reported;
  r.time_sec = seconds_since(start);
  return r;
}

LocalizationReport localize(const normalizer::NormProgram& np, const FunctionDef& f, const Config& cfg) {
  cfg.solver.validate();
  auto start = Clock::now();
  LocalizationReport report;
  report.function = f.name;
  report.mode = cfg.mode;
  report.semantics = cfg.solver.semantics();
  report.bound = cfg.solver.bound;
  report.detection = verify(np.program, f, cfg.solver);
  report.detect_sec = seconds_since(start);

  if (!report.detection.verdict.is_valid()) {
    auto candidates = faultmodel::enumerate_candidates(np.program, f, np.map);
    report.candidates.resize(candidates.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < candidates.size();)
        report.candidates[i] = check_candidate(np.program, f, candidates[i], cfg);
    };
    std::size_t n = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(cfg.workers, 1)), 1,
                                            std::max<std::size_t>(candidates.size(), 1));
    if (n == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      std::exception_ptr failure;
      std::mutex failure_lock;
      for (std::size_t t = 0; t < n; ++t)
        pool.emplace_back([&] {
          try {
            work();
          } catch (...) {
            std::lock_guard<std::mutex> hold(failure_lock);
            if (!failure) failure = std::current_exception();
            next = candidates.size();
          }
        });
      for (auto& th : pool) th.join();
      if (failure) std::rethrow_exception(failure);
    }
    for (const auto& r : report.candidates)
      if (r.overall == Overall::Reported) report.reported.push_back(r.candidate.location);
  }
  report.total_sec = seconds_since(start);
  return report;
}

}  // namespace floc::localize
