#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace floc {

enum class Sort { Int, Bool, Void };

std::string_view to_string(Sort sort);

/// Source region, 1-based lines and columns; end column is inclusive.
struct Span {
  std::string file;
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  bool valid() const { return start_line > 0; }
  bool contains(const Span& inner) const;
  std::string to_string() const;
};

Span join(const Span& first, const Span& last);

/// Runtime value of an MCL expression.
using Value = std::variant<std::int64_t, bool>;

std::string to_string(const Value& value);

/// Ordered variable assignment; ordering keeps witnesses and reports stable.
using Valuation = std::map<std::string, Value>;

/// Base class for all user-facing errors raised by the toolchain.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace floc
