#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "floc/logic.hpp"
#include "generators.hpp"

using namespace floc;
using namespace floc::logic;

namespace {

Formula a() { return var("a", Sort::Int); }
Formula b() { return var("b", Sort::Int); }
Formula c(const char* n = "c1") { return var(n, Sort::Int); }

std::set<std::string> names(const std::map<std::string, Sort>& m) {
  std::set<std::string> out;
  for (const auto& [n, s] : m) out.insert(n);
  return out;
}

}  // namespace

TEST_CASE("substitution examples") {
  CHECK(to_text(substitute(ge(c(), b()), {{"b", int_const(3)}})) == "(c1 >= 3)");
  Formula post = ge(var("\\result", Sort::Int), b());
  CHECK(to_text(substitute(post, {{"\\result", var("r", Sort::Int)}})) == "(r >= b)");

  Formula shadowed = forall({{"b", Sort::Int}}, ge(c(), b()));
  CHECK(equal(substitute(shadowed, {{"b", int_const(3)}}), shadowed));
}

TEST_CASE("substitution avoids capture") {
  Formula f = forall({{"x", Sort::Int}}, gt(var("x", Sort::Int), var("y", Sort::Int)));
  Formula g = substitute(f, {{"y", var("x", Sort::Int)}});
  CHECK(names(free_vars(g)) == std::set<std::string>{"x"});
  REQUIRE(g.op() == Op::Forall);
  CHECK(g.binders()[0].name != "x");
  // The bound variable still ranges independently of the free x.
  Formula body = substitute(g.arg(0), {{g.binders()[0].name, int_const(5)}});
  CHECK(std::get<bool>(evaluate(body, {{"x", std::int64_t{1}}})));
  CHECK_FALSE(std::get<bool>(evaluate(body, {{"x", std::int64_t{9}}})));
}

TEST_CASE("substitution is simultaneous and sort-checked") {
  Formula f = lt(a(), b());
  CHECK(to_text(substitute(f, {{"a", b()}, {"b", a()}})) == "(b < a)");
  CHECK_THROWS_AS(substitute(f, {{"a", bool_const(true)}}), SortError);
}

TEST_CASE("free variables after substitution") {
  testing::Rng rng(77);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto q = testing::random_query(rng, true);
    auto fv = free_vars(q.body);
    auto repl_q = testing::random_query(rng, false);
    for (const auto& [x, sort] : fv) {
      // A literal replacement may fold away other variables, so keep e open.
      Formula e = sort == Sort::Int                ? add(var("z", Sort::Int), int_const(1))
                  : free_vars(repl_q.body).empty() ? mk_not(var("zb", Sort::Bool))
                                                   : repl_q.body;
      auto expected = names(fv);
      expected.erase(x);
      for (const auto& n : names(free_vars(e))) expected.insert(n);
      CHECK(names(free_vars(substitute(q.body, {{x, e}}))) == expected);
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("constructors fold literals only") {
  CHECK(to_text(add(int_const(2), int_const(3))) == "5");
  CHECK(to_text(mul(int_const(-4), int_const(3))) == "-12");
  CHECK(lt(int_const(1), int_const(2)).is_true());
  CHECK(equal(mk_and(bool_const(true), lt(a(), b())), lt(a(), b())));
  CHECK(mk_and(bool_const(false), bool_const(true)).is_false());
  CHECK(to_text(mk_and(bool_const(false), lt(a(), b()))) == "((a < b) && false)");
  CHECK(to_text(mk_or(lt(a(), b()), bool_const(true))) == "((a < b) || true)");
  CHECK(equal(implies(bool_const(true), lt(a(), b())), lt(a(), b())));
  CHECK(to_text(implies(lt(a(), b()), bool_const(false))) == "(a >= b)");
  CHECK(implies(bool_const(false), bool_const(false)).is_true());
  CHECK(occurs_free(implies(bool_const(false), lt(a(), b())), "a"));
  CHECK(equal(ite(bool_const(true), a(), int_const(0)), a()));
  CHECK(occurs_free(ite(bool_const(true), int_const(0), a()), "a"));
  CHECK(to_text(mk_not(lt(a(), b()))) == "(a >= b)");
  CHECK(to_text(mk_not(eq(a(), b()))) == "(a != b)");
  CHECK(to_text(implies(lt(a(), b()), ge(c(), b()))) == "((a < b) => (c1 >= b))");
  CHECK(to_text(neg(a())) == "(-a)");
}

TEST_CASE("simplification never removes the placeholder") {
  Formula c1 = c();
  for (Formula f : {mul(c1, int_const(0)), sub(c1, c1), add(c1, int_const(0)), ge(c1, c1), eq(c1, c1)})
    CHECK(occurs_free(f, "c1"));
  Formula inst = substitute(mk_or(le(b(), a()), ge(c("c3"), b())), {{"a", int_const(1)}, {"b", int_const(0)}});
  CHECK(to_text(inst) == "((c3 >= 0) || true)");
  Formula pinned = mk_and({eq(c1, int_const(400)), eq(int_const(550), int_const(500))});
  CHECK(occurs_free(pinned, "c1"));
  Formula kept = substitute(mk_or(le(b(), a()), ge(c("c3"), b())), {{"a", int_const(-1)}, {"b", int_const(0)}});
  CHECK(occurs_free(kept, "c3"));
}

TEST_CASE("sort errors") {
  CHECK_THROWS_AS(add(bool_const(true), int_const(1)), SortError);
  CHECK_THROWS_AS(mk_and(a(), bool_const(true)), SortError);
  CHECK_THROWS_AS(eq(a(), bool_const(true)), SortError);
  CHECK_THROWS_AS(ite(a(), a(), b()), SortError);
  CHECK_NOTHROW(eq(bool_const(true), var("p", Sort::Bool)));
}

TEST_CASE("evaluation") {
  Valuation env{{"a", std::int64_t{3}}, {"b", std::int64_t{-2}}, {"p", true}};
  CHECK(std::get<std::int64_t>(evaluate(sub(mul(a(), b()), neg(a())), env)) == -3);
  CHECK(std::get<bool>(evaluate(ite(var("p", Sort::Bool), gt(a(), b()), lt(a(), b())), env)));
  CHECK_THROWS_AS(evaluate(c(), env), Error);
  Valuation big{{"a", std::int64_t{1} << 62}, {"b", std::int64_t{4}}};
  CHECK_THROWS_AS(evaluate(mul(a(), b()), big), Error);
}

TEST_CASE("shared subterms are counted once") {
  Formula s = add(a(), b());
  Formula f = mul(s, s);
  CHECK(dag_size(f) == 4);
}

TEST_CASE("queries classify every free variable") {
  Formula body = mk_or(le(b(), a()), ge(c("c3"), b()));
  auto q = build_query(body, {{"a", Sort::Int}, {"b", Sort::Int}}, SortedVar{"c3", Sort::Int}, {});
  CHECK(to_text(q.closure()) == "forall a:int, b:int. exists c3:int. ((b <= a) || (c3 >= b))");
  CHECK(free_vars(q.closure()).empty());

  CHECK_THROWS_AS(build_query(ge(var("tmp_9", Sort::Int), a()), {{"a", Sort::Int}}, std::nullopt, {}),
                  UnclassifiedVariable);
  CHECK_THROWS_AS(build_query(ge(b(), a()), {{"a", Sort::Int}, {"b", Sort::Int}}, std::nullopt, {{"b", Sort::Int}}),
                  Error);

  auto v = build_query(ge(a(), b()), {{"a", Sort::Int}}, std::nullopt, {{"b", Sort::Int}});
  CHECK(to_text(v.closure()) == "forall a:int. forall b:int. (a >= b)");
}
