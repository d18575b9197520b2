#include <doctest.h>

#include "prenex/error.hpp"
#include "prenex/semantics.hpp"
#include "support.hpp"

using namespace test;

namespace {

Interpretation two_point(std::vector<bool> p) {
  Interpretation i;
  i.domain_size = 2;
  i.predicates["P"] = std::move(p);
  return i;
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("evaluation") {
    CHECK_FALSE(evaluate(C("false"), Interpretation{}));
    CHECK(evaluate(C("exists x. P(x)"), two_point({true, false})));
    CHECK_FALSE(evaluate(C("forall x. P(x)"), two_point({true, false})));
    CHECK(evaluate(C("forall x. P(x) -> P(x)"), two_point({true, false})));

    Interpretation i;
    i.domain_size = 2;
    i.predicates["S"] = {false, true, false, false};  // only S(1, 0)
    i.constants["c"] = 1;
    CHECK(evaluate(C("exists x. S(c, x)"), i));
    CHECK_FALSE(evaluate(C("exists x. S(x, c)"), i));
  }

  TEST_CASE("uncovered symbols") {
    CHECK_THROWS_AS(evaluate(C("Q"), two_point({true, true})), UncoveredSymbol);
    CHECK_THROWS_AS(evaluate(V("P(y)"), two_point({true, true})), UncoveredSymbol);
    Interpretation short_table = two_point({true});
    CHECK_THROWS_AS(evaluate(C("exists x. P(x)"), short_table), UncoveredSymbol);
  }

  TEST_CASE("equivalence") {
    CHECK(semantically_equivalent(C("P & Q"), C("P & Q")).equivalent);
    CHECK(semantically_equivalent(C("(exists x. P(x)) -> false"), C("forall x. P(x) -> false"), 3).equivalent);
    auto r = semantically_equivalent(C("exists x. P(x)"), C("forall x. P(x)"));
    CHECK_FALSE(r.equivalent);
    REQUIRE(r.counterexample);
    CHECK(r.counterexample->domain_size == 2);
    CHECK(r.counterexample->predicates.at("P") == std::vector<bool>{true, false});
    CHECK(r.counterexample->to_string() == "domain {0,1}; P = {0}");
  }

  TEST_CASE("interpretation counts") {
    Vocabulary v = Vocabulary::of(V("exists x. P(x) & S(x, y) & R"));
    // n = 1: 2 * 2 * 2 * 1; n = 2: 4 * 16 * 2 * 2.
    CHECK(interpretation_count(v, 2) == 8 + 256);
    std::size_t visited = 0;
    for_each_interpretation(v, 2, [&](const Interpretation&) {
      ++visited;
      return true;
    });
    CHECK(visited == 264);
    CHECK(truth_vector(V("exists x. P(x) & S(x, y) & R"), v, 2).size() == 264);
  }

  TEST_CASE("compiled evaluation agrees with the reference evaluator") {
    for (const auto& f : sample(500)) {
      Vocabulary v = Vocabulary::of(f);
      auto truth = truth_vector(f, v, 2);
      std::size_t i = 0;
      for_each_interpretation(v, 2, [&](const Interpretation& m) {
        RefModel ref;
        ref.n = m.domain_size;
        for (const auto& [name, table] : m.predicates) {
          ref.predicates[name] = [table, n = m.domain_size](const std::vector<int>& args) {
            std::size_t index = 0, scale = 1;
            for (int a : args) {
              index += scale * static_cast<std::size_t>(a);
              scale *= static_cast<std::size_t>(n);
            }
            return bool(table[index]);
          };
        }
        ref.constants = m.constants;
        std::map<std::string, int> env(m.variables.begin(), m.variables.end());
        bool expected = ref_eval(f, ref, env);
        CHECK(evaluate(f, m) == expected);
        CHECK(truth[i++] == expected);
        return true;
      });
    }
  }
}
