#include <doctest.h>

#include <sstream>
#include <unordered_set>

#include "prenex/error.hpp"
#include "support.hpp"

using namespace test;

TEST_SUITE("corpus") {
  TEST_CASE("exhaustive corpus") {
    auto all = exhaustive_corpus(3, 3);
    CHECK(all.size() == 114531);
    std::unordered_set<Formula, FormulaHash> distinct(all.begin(), all.end());
    CHECK(distinct.size() == all.size());
    for (const auto& f : all) {
      CHECK(f.quantifier_count() <= 3);
      CHECK(f.connective_count() <= 3);
      CHECK(free_vars(f).empty());
    }
    auto tiny = exhaustive_corpus(0, 0);
    CHECK(tiny.size() == 1);
    CHECK(tiny[0] == C("R"));
  }

  TEST_CASE("exhaustive leaves follow their binders") {
    auto small = exhaustive_corpus(1, 1);
    std::set<std::string> printed;
    for (const auto& f : small) printed.insert(print(f));
    CHECK(printed.count("exists x. P(x)"));
    CHECK(printed.count("forall x. P(x) & Q(x)"));
    CHECK(printed.count("(exists x. P(x)) -> false"));
    CHECK(printed.count("R | false"));
  }

  TEST_CASE("random corpus is deterministic and bounded") {
    RandomCorpusOptions o;
    o.count = 500;
    auto a = random_corpus(o);
    auto b = random_corpus(o);
    CHECK(a == b);
    CHECK(a.size() == 500);
    for (const auto& f : a) CHECK(f.node_count() <= o.max_nodes);
    o.seed += 1;
    CHECK(random_corpus(o) != a);
  }

  TEST_CASE("default corpus") { CHECK(default_corpus().size() == 124531); }

  TEST_CASE("file round trip") {
    Corpus c;
    c.signature = default_signature();
    c.signature.add_predicate("S", 2);
    c.signature.add_constant("c");
    c.formulas = sample(300);
    std::stringstream io;
    write_corpus(io, c);
    Corpus back = read_corpus(io);
    CHECK(back.formulas == c.formulas);
    CHECK(back.signature == c.signature);
  }

  TEST_CASE("comments, blank lines and inferred signatures") {
    std::istringstream in("# a comment\n\nexists x. P(x)\n  \nP(c) & Q\n");
    Corpus c = read_corpus(in);
    REQUIRE(c.formulas.size() == 2);
    CHECK(c.formulas[1] == C("P(c) & Q"));
  }

  TEST_CASE("parse errors carry the line number") {
    std::istringstream in("# signature: P/1\nP(x)\nP(x) &\n");
    try {
      read_corpus(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).rfind("3:", 0) == 0);
    }
  }
}
