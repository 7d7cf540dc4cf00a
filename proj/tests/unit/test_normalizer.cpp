#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "floc/frontend.hpp"
#include "floc/normalizer.hpp"
#include "generators.hpp"

using namespace floc;

namespace {

const char* kCorpus[] = {"max.mcl",      "max_fixed.mcl",    "tcas_v7.mcl", "tcas_v9.mcl", "tcas_v14.mcl",
                         "sum_upto.mcl", "int_division.mcl", "library.mcl", "sum_upto_bug.mcl", "int_division_bug.mcl"};

std::vector<std::string> lines_of(const std::vector<Stmt>& body) {
  std::vector<std::string> out;
  for (const auto& s : body) out.push_back(frontend::print_stmt_line(s));
  return out;
}

// Every expression evaluated by a statement, in program order.
void exprs_of(const std::vector<Stmt>& body, std::vector<const Expr*>& out) {
  for (const auto& s : body) {
    if (s.expr) out.push_back(&*s.expr);
    exprs_of(s.body, out);
    exprs_of(s.else_body, out);
  }
}

void names_of(const std::vector<Stmt>& body, std::set<std::string>& out) {
  for (const auto& s : body) {
    if (s.kind == StmtKind::VarDecl) out.insert(s.name);
    names_of(s.body, out);
    names_of(s.else_body, out);
  }
}

}  // namespace

TEST_CASE("a chained conjunction is hoisted operator by operator") {
  auto np = testing::load_corpus("tcas_v14.mcl");
  const FunctionDef& f = *np.program.find_function("altSepTest");
  auto lines = lines_of(f.body);
  std::vector<std::string> expected = {"bool tmp_0 = OwnTrAlt <= OLEV;", "bool tmp_1 = HConf && tmp_0;",
                                       "int tmp_2 = 2 + 1;", "bool tmp_3 = VerSep > tmp_2;",
                                       "en = tmp_1 && tmp_3;"};
  REQUIRE(lines.size() > 9);
  CHECK(std::vector<std::string>(lines.begin() + 5, lines.begin() + 10) == expected);
  for (std::size_t i = 5; i < 10; ++i) CHECK(f.body[i].span.start_line == 64);
}

TEST_CASE("flat statements are left alone") {
  auto np = testing::load_corpus("max.mcl");
  const FunctionDef& f = np.program.functions[0];
  CHECK(lines_of(f.body) == std::vector<std::string>{"int r = a;", "if (b > a)", "return r;"});
  CHECK(frontend::print_stmt_line(f.body[1].body[0]) == "r = a;");
  Program original = frontend::load(testing::read_corpus("max.mcl"), "max.mcl");
  CHECK(same_shape(original, np.program));
}

TEST_CASE("a call in a condition is hoisted before the if") {
  auto np = testing::load_corpus("tcas_v9.mcl");
  const FunctionDef& f = *np.program.find_function("NonCrossBiasedDescend");
  CHECK(frontend::print_stmt_line(f.body[1]) == "int tmp_0 = InhibitBiasedClimb();");
  CHECK(frontend::print_stmt_line(f.body[2]) == "if (tmp_0 >= DwnSep)");
}

TEST_CASE("locations link normalized nodes to the original text") {
  auto np = testing::load_corpus("tcas_v9.mcl");
  const FunctionDef& f = *np.program.find_function("NonCrossBiasedDescend");
  auto loc = normalizer::render_location(*f.body[2].expr, np.map);
  CHECK(loc.normalized_text == "tmp_0 >= DwnSep");
  CHECK(loc.original_line == 50);
  CHECK(loc.original_text == "InhibitBiasedClimb() >= DwnSep");

  auto flat = normalizer::render_location(*f.body[2].body[1].expr, np.map);
  CHECK(flat.normalized_text == "VerSep >= MSEP");
  CHECK(flat.original_text == flat.normalized_text);

  auto v7 = testing::load_corpus("tcas_v7.mcl");
  auto lit = normalizer::render_location(*v7.program.functions[0].body[1].expr, v7.map);
  CHECK(lit.original_line == 16);
  CHECK(lit.start_col == 16);
  CHECK(lit.end_col == 18);
  CHECK(lit.original_text == "550");
}

TEST_CASE("source map rejects spans outside the file") {
  normalizer::SourceMap map("x.mcl", "int a;\nint b;\n");
  CHECK(map.line_count() == 2);
  CHECK(map.line(2) == "int b;");
  CHECK(map.snippet(Span{"x.mcl", 1, 1, 2, 3}) == "int a; int");
  CHECK_THROWS_AS(map.snippet(Span{"x.mcl", 9, 1, 9, 2}), normalizer::UnknownNode);
  CHECK_THROWS_AS(map.snippet(Span{}), normalizer::UnknownNode);
  CHECK_FALSE(map.covers(Span{"x.mcl", 1, 1, 1, 40}));
}

TEST_CASE("normalized functions are flat and idempotent") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    auto np = testing::load_corpus(name);
    for (const auto& f : np.program.functions) {
      CHECK(normalizer::is_normalized(f));
      CHECK(same_shape(normalizer::normalize_function(f), f));
    }
    CHECK(same_shape(normalizer::normalize(np.program).program, np.program));
  }
  testing::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    auto np = normalizer::normalize(frontend::load(testing::random_program(rng)));
    const FunctionDef& f = np.program.functions[0];
    CHECK(normalizer::is_normalized(f));
    CHECK(same_shape(normalizer::normalize(np.program).program, np.program));
    std::vector<const Expr*> es;
    exprs_of(f.body, es);
    for (const Expr* e : es) {
      CHECK(np.map.covers(e->span));
      CHECK_NOTHROW(normalizer::render_location(*e, np.map));
    }
  }
}

TEST_CASE("temporaries continue after existing ones") {
  FunctionDef f;
  f.name = "f";
  f.return_sort = Sort::Int;
  Expr sum = Expr::binary(ExprKind::Add, Expr::var("tmp_4", Sort::Int),
                          Expr::binary(ExprKind::Mul, Expr::var("tmp_4", Sort::Int), Expr::int_lit(2)));
  sum.sort = Sort::Int;
  sum.operands[1].sort = Sort::Int;
  f.body.push_back(Stmt::var_decl("tmp_4", Sort::Int, Expr::int_lit(1)));
  f.body.push_back(Stmt::return_(sum));
  FunctionDef n = normalizer::normalize_function(f);
  REQUIRE(n.body.size() == 3);
  CHECK(frontend::print_stmt_line(n.body[1]) == "int tmp_5 = tmp_4 * 2;");
  CHECK(frontend::print_stmt_line(n.body[2]) == "return tmp_4 + tmp_5;");
}

TEST_CASE("temporaries never collide with user identifiers") {
  testing::Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    Program p = frontend::load(testing::random_program(rng));
    std::set<std::string> user;
    names_of(p.functions[0].body, user);
    for (const auto& prm : p.functions[0].params) user.insert(prm.name);
    auto np = normalizer::normalize(p);
    std::set<std::string> after;
    names_of(np.program.functions[0].body, after);
    for (const auto& n : after)
      if (!user.count(n)) CHECK(frontend::is_reserved_temp_name(n));
  }
}

TEST_CASE("normalization preserves semantics") {
  testing::Rng rng(1234);
  for (int i = 0; i < 500; ++i) {
    std::string src = testing::random_program(rng);
    Program p = frontend::load(src);
    auto np = normalizer::normalize(p);
    Valuation env = testing::random_input(p, p.functions[0], 8, rng);
    CAPTURE(src);
    CHECK(frontend::interpret(p, p.functions[0], env) ==
          frontend::interpret(np.program, np.program.functions[0], env));
  }
}

TEST_CASE("normalized listing carries original line numbers") {
  auto np = testing::load_corpus("max.mcl");
  std::string dump = normalizer::dump_normalized(np.program.functions[0]);
  CHECK(dump.find("    3 |   int r = a;") != std::string::npos);
  CHECK(dump.find("    5 |     r = a;") != std::string::npos);
  CHECK(dump.find("    6 |   return r;") != std::string::npos);
}
