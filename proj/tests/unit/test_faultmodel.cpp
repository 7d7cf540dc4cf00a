#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "floc/faultmodel.hpp"
#include "floc/frontend.hpp"
#include "generators.hpp"

using namespace floc;
using faultmodel::SiteKind;

namespace {

const char* kCorpus[] = {"max.mcl",      "max_fixed.mcl",    "tcas_v7.mcl", "tcas_v9.mcl", "tcas_v14.mcl",
                         "sum_upto.mcl", "int_division.mcl", "library.mcl", "sum_upto_bug.mcl", "int_division_bug.mcl"};

// Independent count of qualifying sites.
int count_sites(const std::vector<Stmt>& body) {
  int n = 0;
  for (const auto& s : body) {
    bool call = s.expr && s.expr->kind == ExprKind::Call;
    switch (s.kind) {
      case StmtKind::VarDecl:
      case StmtKind::Assign: n += s.expr && !call; break;
      case StmtKind::If:
      case StmtKind::While: n += 1; break;
      case StmtKind::Return: n += s.expr.has_value(); break;
      case StmtKind::Block: break;
    }
    n += count_sites(s.body) + count_sites(s.else_body);
  }
  return n;
}

// The instrumented function as a standalone program where the placeholder
// is an extra parameter, so the typechecker can judge it.
Program with_placeholder_param(const Program& p, const faultmodel::Instrumented& inst) {
  Program q = p;
  FunctionDef f = inst.function;
  f.params.push_back({inst.placeholder.name, inst.placeholder.sort, {}});
  *q.find_function(f.name) = f;
  return frontend::load(frontend::print_program(q));
}

}  // namespace

TEST_CASE("max has four candidates C1 to C4") {
  auto np = testing::load_corpus("max.mcl");
  auto cands = faultmodel::enumerate_candidates(np.program, np.program.functions[0], np.map);
  REQUIRE(cands.size() == 4);
  SiteKind kinds[] = {SiteKind::Init, SiteKind::IfCond, SiteKind::Assign, SiteKind::Return};
  int lines[] = {3, 4, 5, 6};
  const char* texts[] = {"a", "b > a", "a", "r"};
  for (int i = 0; i < 4; ++i) {
    const auto& c = cands[static_cast<std::size_t>(i)];
    CHECK(c.id == i + 1);
    CHECK(c.kind == kinds[i]);
    CHECK(c.location.original_line == lines[i]);
    CHECK(c.location.normalized_text == texts[i]);
    CHECK(c.placeholder == "c" + std::to_string(i + 1));
    CHECK_FALSE(c.loop_scoped);
  }
  CHECK(cands[1].sort == Sort::Bool);
}

TEST_CASE("empty void function has no candidates") {
  auto np = normalizer::normalize(frontend::load("void f() { }"));
  CHECK(faultmodel::enumerate_candidates(np.program, np.program.functions[0], np.map).empty());
}

TEST_CASE("hoisted comparison is a candidate of its own") {
  auto np = testing::load_corpus("tcas_v14.mcl");
  auto cands = faultmodel::enumerate_candidates(np.program, *np.program.find_function("altSepTest"), np.map);
  bool found = false;
  for (const auto& c : cands)
    if (c.location.normalized_text == "VerSep > tmp_2") {
      found = true;
      CHECK(c.location.original_line == 64);
      CHECK(c.location.original_text == "VerSep > 2 + 1");
    }
  CHECK(found);
}

TEST_CASE("call results are not candidates") {
  auto np = testing::load_corpus("tcas_v9.mcl");
  for (const auto& c :
       faultmodel::enumerate_candidates(np.program, *np.program.find_function("NonCrossBiasedDescend"), np.map))
    CHECK(c.expr.kind != ExprKind::Call);
}

TEST_CASE("instrumenting max") {
  auto np = testing::load_corpus("max.mcl");
  const FunctionDef& f = np.program.functions[0];
  auto cands = faultmodel::enumerate_candidates(np.program, f, np.map);

  auto c1 = faultmodel::instrument(f, cands[0]);
  CHECK(c1.placeholder.name == "c1");
  CHECK(c1.placeholder.sort == Sort::Int);
  CHECK(frontend::print_stmt_line(c1.function.body[0]) == "int r = c1;");
  CHECK(frontend::print_stmt_line(c1.function.body[1].body[0]) == "r = a;");

  auto c2 = faultmodel::instrument(f, cands[1]);
  CHECK(c2.placeholder.sort == Sort::Bool);
  CHECK(frontend::print_stmt_line(c2.function.body[1]) == "if (c2)");
  CHECK_NOTHROW(with_placeholder_param(np.program, c2));

  // The original is untouched.
  CHECK(frontend::print_stmt_line(f.body[0]) == "int r = a;");
}

TEST_CASE("instrumented functions round-trip through the printer and typecheck") {
  for (const char* name : kCorpus) {
    auto np = testing::load_corpus(name);
    for (const auto& f : np.program.functions) {
      for (const auto& c : faultmodel::enumerate_candidates(np.program, f, np.map)) {
        CAPTURE(name);
        CAPTURE(c.id);
        auto inst = faultmodel::instrument(f, c);
        Program reparsed = frontend::parse(frontend::print_function(inst.function));
        REQUIRE(reparsed.functions.size() == 1);
        CHECK(same_shape(reparsed.functions[0], inst.function));
        // Normalized temporaries are reserved names, and extra parameters
        // would break callers, so only temp-free, call-free files typecheck.
        std::string n = name;
        if (n == "max.mcl" || n == "library.mcl") CHECK_NOTHROW(with_placeholder_param(np.program, inst));
      }
    }
  }
}

TEST_CASE("candidate count matches an independent walk") {
  for (const char* name : kCorpus) {
    auto np = testing::load_corpus(name);
    for (const auto& f : np.program.functions) {
      CAPTURE(f.name);
      CHECK(static_cast<int>(faultmodel::enumerate_candidates(np.program, f, np.map).size()) ==
            count_sites(f.body));
    }
  }
  testing::Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    auto np = normalizer::normalize(frontend::load(testing::random_program(rng)));
    const auto& f = np.program.functions[0];
    auto cands = faultmodel::enumerate_candidates(np.program, f, np.map);
    CHECK(static_cast<int>(cands.size()) == count_sites(f.body));
    for (const auto& c : cands) CHECK(same_shape(*faultmodel::site_stmt(f, c.path).expr, c.expr));
  }
}

TEST_CASE("placeholders avoid every name in the program") {
  auto np = normalizer::normalize(frontend::load(R"(
int c2;
/*@ ensures \result >= c1; @*/
int f(int c1) {
  int r = c1;
  return r;
})"));
  auto cands = faultmodel::enumerate_candidates(np.program, np.program.functions[0], np.map);
  REQUIRE(cands.size() == 2);
  CHECK(cands[0].placeholder == "c1_");
  CHECK(cands[1].placeholder == "c2_");
}

TEST_CASE("sites evaluated per iteration are loop-scoped") {
  auto np = testing::load_corpus("int_division.mcl");
  auto cands = faultmodel::enumerate_candidates(np.program, np.program.functions[0], np.map);
  std::vector<std::pair<SiteKind, bool>> got;
  for (const auto& c : cands) got.emplace_back(c.kind, c.loop_scoped);
  std::vector<std::pair<SiteKind, bool>> expected = {{SiteKind::Init, false},     {SiteKind::Init, false},
                                                     {SiteKind::WhileCond, true}, {SiteKind::Assign, true},
                                                     {SiteKind::Assign, true},    {SiteKind::Return, false}};
  CHECK(got == expected);
}

TEST_CASE("replacing a site") {
  auto np = testing::load_corpus("max.mcl");
  const FunctionDef& f = np.program.functions[0];
  auto cands = faultmodel::enumerate_candidates(np.program, f, np.map);
  FunctionDef fixed = faultmodel::replace_site(f, cands[2], Expr::var("b", Sort::Int, cands[2].expr.span));
  CHECK(frontend::print_stmt_line(fixed.body[1].body[0]) == "r = b;");
  CHECK(fixed.body[1].body[0].expr->span.start_line == 5);
}
