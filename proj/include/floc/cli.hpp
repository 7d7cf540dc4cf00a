#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "floc/localize.hpp"

namespace floc::cli {

enum class Command { Verify, Localize, ListCandidates, DumpVc, DumpNormalized };
enum class Format { Text, Json };

struct RunConfig {
  Command command = Command::Localize;
  std::string input_path;
  std::optional<std::string> function;
  localize::Config localize;
  Format format = Format::Text;
  bool timings = true;              // false: all times are reported as 0
  std::optional<int> candidate;     // dump-vc: instrument this candidate first
};

/// Exit codes: 0 verified / localization completed, 1 error detected by
/// verify, 2 usage, input, parse, or type error.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses a command line (`floc <command> <file> [flags]`, or the flag forms
/// `--list-candidates`, `--dump-vc`, `--dump-normalized`) and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Report rendering.
std::string render_text(const localize::LocalizationReport& r);
std::string render_json(const std::vector<localize::LocalizationReport>& reports, bool timings = true);
std::string render_verify_text(const std::string& function, const localize::Detection& d);

/// Re-serializes a machine-readable report produced by render_json, checking
/// its structure; the output is byte-identical to the input for well-formed
/// reports. Throws Error on malformed input.
std::string reserialize_json(const std::string& text);

/// Summary of a parsed machine-readable report, for tooling and tests.
struct ReportedLine {
  int original_line = 0;
  std::string original_text;
  std::string normalized_text;
};
struct ParsedReport {
  std::string function;
  std::string detection;
  std::vector<ReportedLine> reported;
};
std::vector<ParsedReport> parse_json(const std::string& text);

}  // namespace floc::cli
