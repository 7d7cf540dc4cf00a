#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "floc/frontend.hpp"
#include "generators.hpp"

using namespace floc;

namespace {

const char* kCorpus[] = {"max.mcl",      "max_fixed.mcl",    "tcas_v7.mcl", "tcas_v9.mcl", "tcas_v14.mcl",
                         "sum_upto.mcl", "int_division.mcl", "library.mcl", "sum_upto_bug.mcl", "int_division_bug.mcl"};

bool has_kind(const frontend::TypeError& e, frontend::DiagnosticKind k) {
  for (const auto& d : e.diagnostics())
    if (d.kind == k) return true;
  return false;
}

frontend::DiagnosticKind first_kind(std::string_view src) {
  try {
    frontend::load(src);
  } catch (const frontend::TypeError& e) {
    REQUIRE(!e.diagnostics().empty());
    return e.diagnostics().front().kind;
  }
  FAIL("expected a type error");
  return frontend::DiagnosticKind::SortMismatch;
}

void check_nested(const Expr& e, const Span& parent) {
  CHECK(parent.contains(e.span));
  for (const auto& op : e.operands) check_nested(op, e.span);
}

void check_nested(const std::vector<Stmt>& body, const Span& parent) {
  for (const auto& s : body) {
    CHECK(parent.contains(s.span));
    if (s.expr) check_nested(*s.expr, s.span);
    check_nested(s.body, s.span);
    check_nested(s.else_body, s.span);
  }
}

Valuation max_env(std::int64_t a, std::int64_t b) { return {{"a", a}, {"b", b}}; }

}  // namespace

TEST_CASE("max listing parses to one function with its contract") {
  Program p = frontend::parse(testing::read_corpus("max.mcl"), "max.mcl");
  REQUIRE(p.functions.size() == 1);
  const FunctionDef& f = p.functions[0];
  CHECK(f.name == "max");
  CHECK(f.params.size() == 2);
  CHECK(f.requires_clauses.empty());
  REQUIRE(f.ensures_clauses.size() == 1);
  CHECK(frontend::print_expr(f.ensures_clauses[0]) == "\\result >= b");
  CHECK(f.span.start_line == 1);
}

TEST_CASE("empty input has no functions") {
  Program p = frontend::parse("");
  CHECK(p.functions.empty());
  CHECK(p.globals.empty());
}

TEST_CASE("malformed expression is rejected at the semicolon") {
  try {
    frontend::parse("int f() { return 1 + ; }");
    FAIL("expected a syntax error");
  } catch (const frontend::SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() == 22);
    CHECK(e.found() == ";");
    CHECK(!e.expected().empty());
  }
}

TEST_CASE("typecheck accepts the corpus") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    CHECK_NOTHROW(frontend::load(testing::read_corpus(name), name));
  }
}

TEST_CASE("typecheck diagnostics") {
  using K = frontend::DiagnosticKind;
  CHECK(first_kind("int f() { bool b = 1 + 2; return 0; }") == K::SortMismatch);
  CHECK(first_kind("/*@ ensures \\result >= 0; @*/ void h() { }") == K::IllegalResultUse);
  CHECK(first_kind("int f(int a) { a = 1; return a; }") == K::AssignToParam);
  CHECK(first_kind("int f() { return y; }") == K::UnknownIdentifier);
  CHECK(first_kind("int f() { int tmp_3 = 0; return tmp_3; }") == K::ReservedName);
  CHECK(first_kind("int f() { int r = f(); return r; }") == K::RecursiveCall);
  CHECK(first_kind("int f(int a) { int a = 1; return a; }") == K::DuplicateName);
  CHECK(first_kind("int f() { int r = 0; }") == K::MissingReturn);
  CHECK(first_kind("pure int g() { return 1; } /*@ ensures \\result == g(); @*/ int f() { return 1; }") ==
        K::CallInAnnotation);
  CHECK(first_kind("int g() { return 1; } int f() { int r = 1 + g(); return r; }") == K::NonPureCall);
  CHECK(first_kind("pure int g(int x) { return x; } int f() { int r = g(); return r; }") == K::ArityMismatch);
  CHECK(first_kind("int f() { return 1; int r = 0; }") == K::MisplacedReturn);
}

TEST_CASE("every diagnostic is collected") {
  try {
    frontend::load("int f() { bool b = 1; int c = true; return 0; }");
    FAIL("expected a type error");
  } catch (const frontend::TypeError& e) {
    CHECK(e.diagnostics().size() == 2);
    CHECK(has_kind(e, frontend::DiagnosticKind::SortMismatch));
  }
}

TEST_CASE("reserved temporaries") {
  CHECK(frontend::is_reserved_temp_name("tmp_0"));
  CHECK(frontend::is_reserved_temp_name("tmp_12"));
  CHECK_FALSE(frontend::is_reserved_temp_name("tmp_"));
  CHECK_FALSE(frontend::is_reserved_temp_name("tmp_1a"));
  CHECK_FALSE(frontend::is_reserved_temp_name("tmp"));
}

TEST_CASE("globals that are never assigned are constant") {
  Program p = frontend::load(testing::read_corpus("tcas_v9.mcl"), "v9");
  CHECK(p.find_global("MSEP")->is_constant);
  CHECK_FALSE(p.find_global("UpSep")->is_constant);
  Program v7 = frontend::load(testing::read_corpus("tcas_v7.mcl"), "v7");
  for (const auto& g : v7.globals) CHECK_FALSE(g.is_constant);
}

TEST_CASE("print then parse round-trips") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    Program p = frontend::parse(testing::read_corpus(name), name);
    CHECK(same_shape(frontend::parse(frontend::print_program(p)), p));
  }
  testing::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    std::string src = testing::random_program(rng);
    CAPTURE(src);
    Program p = frontend::parse(src);
    std::string printed = frontend::print_program(p);
    CHECK(same_shape(frontend::parse(printed), p));
    CHECK(frontend::print_program(frontend::parse(printed)) == printed);
  }
}

TEST_CASE("node spans nest inside their parents") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    Program p = frontend::load(testing::read_corpus(name), name);
    for (const auto& f : p.functions) {
      for (const auto& e : f.requires_clauses) check_nested(e, f.span);
      for (const auto& e : f.ensures_clauses) check_nested(e, f.span);
      check_nested(f.body, f.span);
    }
  }
}

TEST_CASE("interpreter on max") {
  Program p = frontend::load(testing::read_corpus("max.mcl"), "max.mcl");
  const FunctionDef& f = p.functions[0];

  auto r = frontend::interpret(p, f, max_env(1, 5));
  CHECK(r.status == frontend::ExecResult::Status::Returned);
  CHECK(std::get<std::int64_t>(*r.value) == 1);
  CHECK_FALSE(frontend::ensures_holds(p, f, max_env(1, 5), r));

  r = frontend::interpret(p, f, max_env(5, 1));
  CHECK(std::get<std::int64_t>(*r.value) == 5);
  CHECK(frontend::ensures_holds(p, f, max_env(5, 1), r));
}

TEST_CASE("interpreter gates on requires, bounds fuel, and detects overflow") {
  Program p = frontend::load(R"(
/*@ requires x >= 0; @*/
int f(int x) {
  int r = x * x;
  return r;
}
/*@ requires n >= 0; ensures \result == n;
@*/
int g(int n) {
  int i = 0;
  /*@ loop invariant i <= n; @*/
  while (i < n) {
    i = i + 1;
  }
  return i;
}
)");
  const FunctionDef& f = *p.find_function("f");
  CHECK(frontend::interpret(p, f, {{"x", std::int64_t{-1}}}).status ==
        frontend::ExecResult::Status::PreconditionViolated);
  CHECK(frontend::interpret(p, f, {{"x", std::int64_t{4000000000}}}).status ==
        frontend::ExecResult::Status::Overflow);
  const FunctionDef& g = *p.find_function("g");
  CHECK(frontend::interpret(p, g, {{"n", std::int64_t{50}}}).status == frontend::ExecResult::Status::Returned);
  CHECK(frontend::interpret(p, g, {{"n", std::int64_t{50}}}, 20).status ==
        frontend::ExecResult::Status::FuelExhausted);
}

TEST_CASE("interpreter is deterministic") {
  testing::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Program p = frontend::load(testing::random_program(rng));
    const FunctionDef& f = p.functions[0];
    Valuation env = testing::random_input(p, f, 8, rng);
    CHECK(frontend::interpret(p, f, env) == frontend::interpret(p, f, env));
  }
}

TEST_CASE("final global state is reported") {
  Program p = frontend::load(testing::read_corpus("tcas_v7.mcl"), "v7");
  const FunctionDef& f = *p.find_function("initialize");
  Valuation env;
  for (const auto& g : p.globals) env[g.name] = std::int64_t{0};
  auto r = frontend::interpret(p, f, env);
  REQUIRE(r.status == frontend::ExecResult::Status::Returned);
  CHECK(std::get<std::int64_t>(r.globals.at("AltThresh1")) == 550);
  CHECK_FALSE(frontend::ensures_holds(p, f, env, r));
}
