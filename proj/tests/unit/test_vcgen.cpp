#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "floc/faultmodel.hpp"
#include "floc/frontend.hpp"
#include "floc/vcgen.hpp"
#include "generators.hpp"

using namespace floc;

namespace {

const char* kCorpus[] = {"max.mcl",      "max_fixed.mcl",    "tcas_v7.mcl", "tcas_v9.mcl", "tcas_v14.mcl",
                         "sum_upto.mcl", "int_division.mcl", "library.mcl", "sum_upto_bug.mcl", "int_division_bug.mcl"};

bool truth(const logic::Formula& f, const Valuation& env) { return std::get<bool>(logic::evaluate(f, env)); }

Valuation abc(std::int64_t a, std::int64_t b, std::int64_t c, const std::string& cname) {
  return {{"a", a}, {"b", b}, {cname, c}};
}

// requires => ensures, as observed by running the original program.
std::optional<bool> run_satisfies(const Program& p, const FunctionDef& f, const Valuation& env) {
  auto r = frontend::interpret(p, f, env);
  using S = frontend::ExecResult::Status;
  if (r.status == S::PreconditionViolated) return true;
  if (r.status != S::Returned) return std::nullopt;
  return frontend::ensures_holds(p, f, env, r);
}

}  // namespace

TEST_CASE("buggy max reduces to the two branch implications") {
  auto np = testing::load_corpus("max.mcl");
  auto obs = vcgen::gen_obligations(np.program, np.program.functions[0]);
  REQUIRE(obs.size() == 1);
  const auto& ob = obs[0];
  CHECK(ob.id == "max.post.0");
  CHECK(ob.kind == vcgen::ObligationKind::PostHolds);
  CHECK(logic::to_text(ob.body) == "(((b > a) => (a >= b)) && ((b <= a) => (a >= b)))");
  CHECK_FALSE(truth(ob.body, {{"a", std::int64_t{0}}, {"b", std::int64_t{1}}}));
  CHECK(ob.span.start_line == 1);
  CHECK(ob.span.end_line == 6);

  Program original = frontend::load(testing::read_corpus("max.mcl"), "max.mcl");
  testing::Rng rng(3);
  std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
  for (int i = 0; i < 1000; ++i) {
    Valuation env{{"a", d(rng)}, {"b", d(rng)}};
    CHECK(truth(ob.body, env) == *run_satisfies(original, original.functions[0], env));
  }
}

TEST_CASE("instrumented max bodies match the repairability formulas") {
  auto np = testing::load_corpus("max.mcl");
  const FunctionDef& f = np.program.functions[0];
  auto cands = faultmodel::enumerate_candidates(np.program, f, np.map);
  REQUIRE(cands.size() == 4);
  auto body_of = [&](int id) {
    auto inst = faultmodel::instrument(f, cands[static_cast<std::size_t>(id - 1)]);
    auto obs = vcgen::gen_obligations(np.program, inst.function, inst.placeholder);
    REQUIRE(obs.size() == 1);
    REQUIRE(obs[0].placeholder);
    CHECK(obs[0].placeholder->name == inst.placeholder.name);
    return obs[0].body;
  };
  logic::Formula c1 = body_of(1), c3 = body_of(3);
  for (std::int64_t a = -8; a <= 8; ++a)
    for (std::int64_t b = -8; b <= 8; ++b)
      for (std::int64_t c = -8; c <= 8; ++c) {
        CHECK(truth(c1, abc(a, b, c, "c1")) == (b <= a && c >= b));
        CHECK(truth(c3, abc(a, b, c, "c3")) == (b <= a || c >= b));
      }
}

TEST_CASE("empty block is the identity") {
  Program p = frontend::load("/*@ ensures \\result == 0; @*/ int f() { return 0; }");
  logic::Formula q = logic::gt(logic::var("a", Sort::Int), logic::int_const(1));
  auto r = vcgen::wp(p, p.functions[0], {}, q);
  CHECK(logic::equal(r.post, q));
  CHECK(r.side.empty());
}

TEST_CASE("obligation counts") {
  auto max = testing::load_corpus("max.mcl");
  CHECK(vcgen::gen_obligations(max.program, max.program.functions[0]).size() == 1);

  auto sum = testing::load_corpus("sum_upto.mcl");
  auto obs = vcgen::gen_obligations(sum.program, *sum.program.find_function("sum_upto"));
  REQUIRE(obs.size() == 4);
  using K = vcgen::ObligationKind;
  CHECK(obs[0].kind == K::PostHolds);
  CHECK(obs[1].kind == K::LoopInvInit);
  CHECK(obs[2].kind == K::LoopInvPreserved);
  CHECK(obs[3].kind == K::CalleePreHolds);
  CHECK(obs[3].id == "sum_upto.callee_pre.0");
  CHECK_FALSE(obs[0].auxiliaries.empty());

  auto div = testing::load_corpus("int_division.mcl");
  CHECK(vcgen::gen_obligations(div.program, div.program.functions[0]).size() == 3);
}

TEST_CASE("requires false makes every obligation vacuous") {
  Program p = frontend::load(R"(
/*@ requires x >= 0; ensures \result == x; @*/
pure int id(int x) { return x; }
/*@ requires false; ensures \result == 7; @*/
int f(int n) {
  int i = 0;
  /*@ loop invariant i == 3; @*/
  while (i < n) {
    i = id(i);
  }
  return i;
})");
  auto np = normalizer::normalize(p);
  auto obs = vcgen::gen_obligations(np.program, *np.program.find_function("f"));
  CHECK(obs.size() == 4);
  for (const auto& ob : obs) {
    std::vector<logic::SortedVar> vars;
    for (const auto& [n, sort] : logic::free_vars(ob.body)) vars.push_back({n, sort});
    for (const auto& env : testing::all_assignments(vars, 3)) CHECK(truth(ob.body, env));
  }
}

TEST_CASE("closures are sentences and generation is deterministic") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    auto np = testing::load_corpus(name);
    for (const auto& f : np.program.functions) {
      auto a = vcgen::gen_obligations(np.program, f);
      auto b = vcgen::gen_obligations(np.program, f);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(logic::free_vars(a[i].query().closure()).empty());
        CHECK(a[i].id == b[i].id);
        CHECK(logic::to_text(a[i].body) == logic::to_text(b[i].body));
      }
    }
  }
}

TEST_CASE("each instrumented candidate has one placeholder, free in some obligation") {
  for (const char* name : kCorpus) {
    auto np = testing::load_corpus(name);
    for (const auto& f : np.program.functions) {
      for (const auto& c : faultmodel::enumerate_candidates(np.program, f, np.map)) {
        CAPTURE(name);
        CAPTURE(c.location.normalized_text);
        auto inst = faultmodel::instrument(f, c);
        auto obs = vcgen::gen_obligations(np.program, inst.function, inst.placeholder);
        bool occurs = false;
        for (const auto& ob : obs) {
          REQUIRE(ob.placeholder);
          CHECK(ob.placeholder->name == c.placeholder);
          for (const auto& v : ob.inputs) CHECK(v.name != c.placeholder);
          for (const auto& v : ob.auxiliaries) CHECK(v.name != c.placeholder);
          occurs |= logic::occurs_free(ob.body, c.placeholder);
        }
        CHECK(occurs);
      }
    }
  }
}

TEST_CASE("verification formula agrees with the interpreter on every bounded input") {
  testing::Rng rng(99);
  int programs = 0;
  while (programs < 40) {
    Program p = frontend::load(testing::random_program(rng));
    const FunctionDef& f = p.functions[0];
    std::vector<logic::SortedVar> ins;
    for (const auto& prm : f.params) ins.push_back({prm.name, prm.sort});
    for (const auto& g : p.globals) ins.push_back({g.name, g.sort});
    if (ins.size() > 3) continue;
    ++programs;
    auto np = normalizer::normalize(p);
    auto obs = vcgen::gen_obligations(np.program, np.program.functions[0]);
    REQUIRE(obs.size() == 1);
    REQUIRE(obs[0].auxiliaries.empty());
    for (const auto& env : testing::all_assignments(ins, 8)) {
      auto expected = run_satisfies(p, f, env);
      if (!expected) continue;  // overflow
      CHECK(truth(obs[0].body, env) == *expected);
    }
  }
}
