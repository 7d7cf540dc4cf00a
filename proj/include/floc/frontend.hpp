#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "floc/ast.hpp"
#include "floc/common.hpp"

namespace floc::frontend {

// ---------------------------------------------------------------------------
// Parsing

class SyntaxError : public Error {
 public:
  SyntaxError(std::string file, int line, int col, std::set<std::string> expected,
              std::string found);

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int col() const { return col_; }
  const std::set<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string file_;
  int line_;
  int col_;
  std::set<std::string> expected_;
  std::string found_;
};

/// Parses MCL source text. Spans of all nodes refer to `file`.
Program parse(std::string_view text, std::string file = "<input>");

/// Parses a standalone expression (used by tests and tooling).
Expr parse_expr(std::string_view text, std::string file = "<expr>");

// ---------------------------------------------------------------------------
// Pretty printing

std::string print_expr(const Expr& e);
std::string print_stmt_line(const Stmt& s);  // single-line header form
std::string print_program(const Program& p);
std::string print_function(const FunctionDef& f);

// ---------------------------------------------------------------------------
// Typechecking

enum class DiagnosticKind {
  SortMismatch,
  IllegalResultUse,
  IllegalOldUse,
  AssignToParam,
  UnknownIdentifier,
  DuplicateName,
  ReservedName,
  NonPureCall,
  RecursiveCall,
  CallInAnnotation,
  ArityMismatch,
  MissingReturn,
  MisplacedReturn,
  ImpureFunction,
};

std::string_view to_string(DiagnosticKind kind);

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
  Span span;

  std::string to_string() const;
};

class TypeError : public Error {
 public:
  explicit TypeError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Resolves sorts on every expression and marks constant globals.
/// Throws TypeError carrying every diagnostic found.
Program typecheck(Program p);

/// Convenience: parse then typecheck.
Program load(std::string_view text, std::string file = "<input>");

/// True for identifiers reserved for normalizer temporaries (tmp_<digits>).
bool is_reserved_temp_name(std::string_view name);

// ---------------------------------------------------------------------------
// Interpretation

struct ExecResult {
  enum class Status {
    Returned,
    PreconditionViolated,
    FuelExhausted,
    Overflow,
    CalleePreconditionViolated,
  };
  Status status = Status::Returned;
  std::optional<Value> value;
  Valuation globals;  // final global state (Returned only)
  std::string detail;

  bool operator==(const ExecResult&) const = default;
};

std::string_view to_string(ExecResult::Status status);

/// Executes `f` on `env`, which must bind every parameter and every
/// non-constant global (extra bindings, e.g. a placeholder, are allowed).
/// Integers are mathematical; leaving the int64 range yields Overflow.
ExecResult interpret(const Program& p, const FunctionDef& f, const Valuation& env,
                     std::size_t fuel = 100000);

/// Evaluates the conjunction of `f`'s ensures clauses for a completed run.
/// `pre` is the environment the run started from (for \old).
bool ensures_holds(const Program& p, const FunctionDef& f, const Valuation& pre,
                   const ExecResult& result);

/// Evaluates the conjunction of `f`'s requires clauses in `env`.
bool requires_holds(const Program& p, const FunctionDef& f, const Valuation& env);

}  // namespace floc::frontend
