#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "floc/cli.hpp"
#include "floc/frontend.hpp"

namespace floc::cli {

namespace {

struct Loaded {
  normalizer::NormProgram np;
  std::vector<const FunctionDef*> functions;  // selected, normalized
};

std::optional<Loaded> load(const RunConfig& cfg, std::ostream& err) {
  std::ifstream in(cfg.input_path, std::ios::binary);
  if (!in) {
    err << "floc: cannot open '" << cfg.input_path << "': no such file or not readable\n";
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  Program p;
  try {
    p = frontend::load(buf.str(), cfg.input_path);
  } catch (const frontend::SyntaxError& e) {
    err << e.what() << '\n';
    return std::nullopt;
  } catch (const frontend::TypeError& e) {
    for (const auto& d : e.diagnostics()) err << d.to_string() << '\n';
    return std::nullopt;
  }
  Loaded l{normalizer::normalize(p), {}};
  for (const auto& f : l.np.program.functions)
    if (!cfg.function || f.name == *cfg.function) l.functions.push_back(&f);
  if (cfg.function && l.functions.empty()) {
    err << "floc: no function named '" << *cfg.function << "' in " << cfg.input_path << '\n';
    return std::nullopt;
  }
  return l;
}

void list_candidates(const Loaded& l, const RunConfig& cfg, std::ostream& out) {
  using Json = nlohmann::ordered_json;
  Json doc = Json::array();
  for (const FunctionDef* f : l.functions) {
    auto cands = faultmodel::enumerate_candidates(l.np.program, *f, l.np.map);
    if (cfg.format == Format::Json) {
      Json fj;
      fj["function"] = f->name;
      fj["candidates"] = Json::array();
      for (const auto& c : cands)
        fj["candidates"].push_back({{"id", c.id},
                                    {"kind", faultmodel::to_string(c.kind)},
                                    {"normalizedText", c.location.normalized_text},
                                    {"originalLine", c.location.original_line},
                                    {"originalText", c.location.original_text},
                                    {"loopScoped", c.loop_scoped},
                                    {"placeholder", c.placeholder}});
      doc.push_back(fj);
      continue;
    }
    out << "function " << f->name << ": " << cands.size() << " candidate" << (cands.size() == 1 ? "" : "s")
        << '\n';
    for (const auto& c : cands) {
      out << "  C" << std::left << std::setw(3) << c.id << std::setw(11) << faultmodel::to_string(c.kind)
          << "line " << std::setw(5) << c.location.original_line << c.location.normalized_text;
      if (c.location.original_text != c.location.normalized_text) out << "  (" << c.location.original_text << ')';
      if (c.loop_scoped) out << "  [loop-scoped]";
      out << std::right << '\n';
    }
  }
  if (cfg.format == Format::Json) out << doc.dump(2) << '\n';
}

int dump_vc(const Loaded& l, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  for (const FunctionDef* f : l.functions) {
    std::vector<vcgen::Obligation> obligations;
    if (cfg.candidate) {
      auto cands = faultmodel::enumerate_candidates(l.np.program, *f, l.np.map);
      if (*cfg.candidate < 1 || *cfg.candidate > static_cast<int>(cands.size())) {
        err << "floc: function " << f->name << " has no candidate C" << *cfg.candidate << '\n';
        return 2;
      }
      auto inst = faultmodel::instrument(*f, cands[static_cast<std::size_t>(*cfg.candidate - 1)]);
      obligations = vcgen::gen_obligations(l.np.program, inst.function, inst.placeholder);
    } else {
      obligations = vcgen::gen_obligations(l.np.program, *f);
    }
    out << "function " << f->name << ": " << obligations.size() << " obligation"
        << (obligations.size() == 1 ? "" : "s") << '\n';
    for (const auto& ob : obligations) {
      out << ob.id << " [" << vcgen::to_string(ob.kind) << "] " << ob.span.to_string() << '\n';
      out << "  " << logic::to_text(ob.query().closure()) << '\n';
    }
  }
  return 0;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto loaded = load(cfg, err);
  if (!loaded) return 2;
  const Loaded& l = *loaded;
  switch (cfg.command) {
    case Command::DumpNormalized:
      for (const FunctionDef* f : l.functions) out << normalizer::dump_normalized(*f) << '\n';
      return 0;
    case Command::ListCandidates: list_candidates(l, cfg, out); return 0;
    case Command::DumpVc: return dump_vc(l, cfg, out, err);
    case Command::Verify: {
      cfg.localize.solver.validate();
      std::vector<localize::LocalizationReport> reports;
      bool all_valid = true;
      for (const FunctionDef* f : l.functions) {
        localize::LocalizationReport r;
        r.function = f->name;
        r.mode = cfg.localize.mode;
        r.semantics = cfg.localize.solver.semantics();
        r.bound = cfg.localize.solver.bound;
        auto start = std::chrono::steady_clock::now();
        r.detection = localize::verify(l.np.program, *f, cfg.localize.solver);
        r.detect_sec = r.total_sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all_valid &= r.detection.verdict.is_valid();
        if (cfg.format == Format::Text) out << render_verify_text(f->name, r.detection);
        reports.push_back(std::move(r));
      }
      if (cfg.format == Format::Json) out << render_json(reports, cfg.timings);
      return all_valid ? 0 : 1;
    }
    case Command::Localize: {
      std::vector<localize::LocalizationReport> reports;
      for (const FunctionDef* f : l.functions) {
        reports.push_back(localize::localize(l.np, *f, cfg.localize));
        if (cfg.format == Format::Text) out << render_text(reports.back());
      }
      if (cfg.format == Format::Json) out << render_json(reports, cfg.timings);
      return 0;
    }
  }
  return 2;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return execute(cfg, out, err);
  } catch (const Error& e) {
    err << "floc: " << e.what() << '\n';
    return 2;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contract-based error localization for MCL programs", "floc"};
  std::vector<std::string> positional;
  RunConfig cfg;
  std::string solver = "internal";
  std::string mode = "per-obligation";
  std::string format = "text";
  bool flag_list = false, flag_vc = false, flag_norm = false, no_timings = false;
  int candidate = 0;
  auto& s = cfg.localize.solver;

  app.add_option("args", positional, "[command] file; command is verify, localize, list-candidates, "
                                     "dump-vc or dump-normalized (default localize)")
      ->required()
      ->expected(1, 2);
  app.add_option("--function", cfg.function, "Only this function");
  app.add_option("--solver", solver, "internal or external")->check(CLI::IsMember({"internal", "external"}));
  app.add_option("--prover", s.prover_command, "External prover command (FLOC_PROVER overrides)");
  app.add_option("--bound", s.bound, "Internal backend: ints range over [-B, B]")->check(CLI::PositiveNumber);
  app.add_option("--placeholder-bound", s.placeholder_bound, "Internal backend: placeholder range (default B)")
      ->check(CLI::PositiveNumber);
  app.add_option("--timeout", s.timeout_sec, "Seconds per query")->check(CLI::PositiveNumber);
  app.add_option("--mode", mode, "per-obligation or conjunction")
      ->check(CLI::IsMember({"per-obligation", "conjunction"}));
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--workers", cfg.localize.workers, "Candidates checked concurrently")->check(CLI::PositiveNumber);
  app.add_flag("--list-candidates", flag_list, "Print the candidate table");
  app.add_flag("--dump-vc", flag_vc, "Print the proof obligations");
  app.add_flag("--dump-normalized", flag_norm, "Print normalized functions with original line numbers");
  app.add_option("--candidate", candidate, "With dump-vc: instrument candidate N first")->check(CLI::PositiveNumber);
  app.add_flag("--no-timings", no_timings, "Report all times as 0 (reproducible output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  static const std::map<std::string, Command> kCommands{{"verify", Command::Verify},
                                                         {"localize", Command::Localize},
                                                         {"list-candidates", Command::ListCandidates},
                                                         {"dump-vc", Command::DumpVc},
                                                         {"dump-normalized", Command::DumpNormalized}};
  if (positional.size() == 2) {
    auto it = kCommands.find(positional[0]);
    if (it == kCommands.end()) {
      err << "floc: unknown command '" << positional[0] << "'\n";
      return 2;
    }
    cfg.command = it->second;
    cfg.input_path = positional[1];
  } else {
    cfg.input_path = positional[0];
  }
  if (flag_list + flag_vc + flag_norm > 1 || ((flag_list || flag_vc || flag_norm) && positional.size() == 2)) {
    err << "floc: give at most one command\n";
    return 2;
  }
  if (flag_list) cfg.command = Command::ListCandidates;
  if (flag_vc) cfg.command = Command::DumpVc;
  if (flag_norm) cfg.command = Command::DumpNormalized;

  s.backend = solver == "external" ? solvers::Backend::External : solvers::Backend::Internal;
  cfg.localize.mode = mode == "conjunction" ? localize::Mode::Conjunction : localize::Mode::PerObligation;
  cfg.format = format == "json" ? Format::Json : Format::Text;
  cfg.timings = !no_timings;
  if (candidate > 0) cfg.candidate = candidate;
  if (s.backend == solvers::Backend::External && solvers::prover_command(s).empty()) {
    err << "floc: --solver external needs --prover or FLOC_PROVER\n";
    return 2;
  }
  return run(cfg, out, err);
}

}  // namespace floc::cli
