#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "floc/ast.hpp"
#include "floc/common.hpp"

namespace floc::normalizer {

/// Where a normalized expression came from.
struct LocationDescription {
  std::string normalized_text;
  int original_line = 0;
  int start_col = 0;  // 1-based, inclusive; on original_line
  int end_col = 0;    // inclusive; on the span's last line
  std::string original_text;
};

class UnknownNode : public Error {
 public:
  using Error::Error;
};

/// Links normalized nodes back to the original source. Normalized nodes keep
/// the span of the original subexpression they were hoisted from, so the map
/// only needs the original text to render them.
class SourceMap {
 public:
  SourceMap() = default;
  SourceMap(std::string file, std::string_view source);

  const std::string& file() const { return file_; }
  int line_count() const { return static_cast<int>(lines_.size()); }
  const std::string& line(int n) const;  // 1-based

  /// Original text covered by `span`, with runs of whitespace (including line
  /// breaks) collapsed to one space. Throws UnknownNode for spans outside
  /// the file.
  std::string snippet(const Span& span) const;

  bool covers(const Span& span) const;

 private:
  std::string file_;
  std::vector<std::string> lines_;
};

struct NormProgram {
  Program program;
  SourceMap map;
};

/// Lowers every function body into flat form: each expression has at most one
/// operator, and calls appear only as the full right-hand side of an
/// assignment or declaration. While conditions are left as written (they
/// cannot contain calls). Temporaries are `tmp_<k>`, numbered per function in
/// left-to-right evaluation order.
NormProgram normalize(const Program& p);

/// Normalizes a single function; temporaries start after the largest
/// `tmp_<k>` index already present in `f`.
FunctionDef normalize_function(const FunctionDef& f);

/// True when `e` has no operator below its top level.
bool is_flat(const Expr& e);

/// True when every statement of `f` satisfies the flatness rules above.
bool is_normalized(const FunctionDef& f);

LocationDescription render_location(const Expr& e, const SourceMap& map);

/// `origLine | stmt` listing of a normalized function.
std::string dump_normalized(const FunctionDef& f);

}  // namespace floc::normalizer
