#include <doctest.h>

#include "prenex/error.hpp"
#include "prenex/rewrite.hpp"
#include "prenex/semantics.hpp"
#include "support.hpp"

using namespace test;

namespace {

std::set<std::string> tags(const std::vector<Application>& apps) {
  std::set<std::string> out;
  for (const auto& a : apps) out.insert(a.rule.tag());
  return out;
}

// Sum over quantifier nodes of their depth from the root.
std::size_t depth_sum(const Formula& f, std::size_t depth = 0) {
  std::size_t total = f.is_quantifier() ? depth : 0;
  for (std::size_t i = 0; i < f.arity(); ++i) total += depth_sum(f.child(i), depth + 1);
  return total;
}

}  // namespace

TEST_SUITE("rewrite") {
  TEST_CASE("rule tags") {
    CHECK(Rule::r1().tag() == "R1");
    CHECK(Rule::pull(RuleKind::R5, Quantifier::Forall).tag() == "R5-forall");
    CHECK(Rule::rename(Quantifier::Exists, "z").tag() == "R8-exists");
    for (std::string tag : {"R1", "R2", "R3-forall", "R3-exists", "R4-forall", "R4-exists", "R5-forall", "R5-exists",
                            "R6-forall", "R6-exists", "R7-forall", "R7-exists", "R8-forall", "R8-exists"}) {
      CHECK(Rule::from_tag(tag, "z").tag() == tag);
    }
    CHECK_THROWS_AS(Rule::from_tag("R9"), RuleNotApplicable);
  }

  TEST_CASE("applicable rules") {
    auto r1 = applicable(C("(exists x. P(x)) -> Q"), {});
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].rule == Rule::r1());
    CHECK(r1[0].result == C("forall x. P(x) -> Q"));

    auto r2 = applicable(C("(forall x. P(x)) -> Q"), {});
    CHECK(tags(r2) == std::set<std::string>{"R2"});
    CHECK(r2[0].result == C("exists x. P(x) -> Q"));

    // x is free in the right conjunct: no pull at the root, only a rename
    // of the binder below it.
    Formula blocked = V("(exists x. P(x)) & Q(x)");
    CHECK(applicable(blocked, {}).empty());
    auto rename = applicable(blocked, {0});
    REQUIRE(rename.size() == 1);
    CHECK(rename[0].rule.tag() == "R8-exists");
    CHECK(rename[0].rule.target == "_f0");

    CHECK(tags(applicable(C("(forall x. P(x)) | exists y. Q(y)"), {})) ==
          std::set<std::string>{"R6-forall", "R7-exists"});
    CHECK_THROWS_AS(applicable(C("P"), {1}), InvalidOccurrence);
  }

  TEST_CASE("apply") {
    auto [r3, step3] = apply(C("P -> forall x. Q(x)"), {}, Rule::pull(RuleKind::R3, Quantifier::Forall));
    CHECK(r3 == C("forall x. P -> Q(x)"));
    CHECK(step3.before == C("P -> forall x. Q(x)"));

    auto [r8, step8] = apply(C("exists x. P(x)"), {}, Rule::rename(Quantifier::Exists, "z"));
    CHECK(r8 == C("exists z. P(z)"));

    auto [inner, step] = apply(C("R | (exists x. P(x)) & Q"), {1}, Rule::pull(RuleKind::R4, Quantifier::Exists));
    CHECK(inner == C("R | exists x. P(x) & Q"));
    CHECK(validate_step(step, C("R | (exists x. P(x)) & Q")));
  }

  TEST_CASE("apply rejects inapplicable rules") {
    Formula f = V("(exists x. P(x)) & Q(x)");
    CHECK_THROWS_AS(apply(f, {}, Rule::pull(RuleKind::R4, Quantifier::Exists)), RuleNotApplicable);
    CHECK_THROWS_AS(apply(f, {}, Rule::pull(RuleKind::R4, Quantifier::Forall)), RuleNotApplicable);
    CHECK_THROWS_AS(apply(f, {}, Rule::r1()), RuleNotApplicable);
    // The R8 target may not occur in the body at all, free or bound.
    CHECK_THROWS_AS(apply(V("exists x. P(x, y)"), {}, Rule::rename(Quantifier::Exists, "y")), RuleNotApplicable);
    CHECK_THROWS_AS(apply(V("exists x. exists y. P(x)"), {}, Rule::rename(Quantifier::Exists, "y")),
                    RuleNotApplicable);
    CHECK_THROWS_AS(apply(C("exists x. P(x)"), {}, Rule::rename(Quantifier::Forall, "z")), RuleNotApplicable);
    CHECK_THROWS_AS(apply(C("exists x. P(x) & P(c)"), {}, Rule::rename(Quantifier::Exists, "c")), RuleNotApplicable);
    CHECK_THROWS_AS(apply(C("P"), {0}, Rule::r1()), InvalidOccurrence);
  }

  TEST_CASE("vacuous binders are pulled like any other") {
    auto [r, step] = apply(C("(exists x. P) & Q"), {}, Rule::pull(RuleKind::R4, Quantifier::Exists));
    CHECK(r == C("exists x. P & Q"));
  }

  TEST_CASE("validate_step") {
    Formula f = C("(exists x. P(x)) -> Q");
    auto [next, step] = apply(f, {}, Rule::r1());
    CHECK(validate_step(step, f));

    // δ has x free.
    Formula g = V("(exists x. P(x)) & Q(x)");
    RewriteStep bad{{}, Rule::pull(RuleKind::R4, Quantifier::Exists), g, V("exists x. P(x) & Q(x)")};
    auto verdict = validate_step(bad, g);
    CHECK_FALSE(verdict);
    CHECK(verdict.detail.find("free") != std::string::npos);

    RewriteStep wrong_place = step;
    wrong_place.occurrence = Occurrence{0};
    CHECK_FALSE(validate_step(wrong_place, f));

    RewriteStep wrong_result = step;
    wrong_result.after = C("exists x. P(x) -> Q");
    CHECK_FALSE(validate_step(wrong_result, f));

    RewriteStep off_tree = step;
    off_tree.occurrence = Occurrence{1, 1};
    CHECK_FALSE(validate_step(off_tree, f));
  }

  TEST_CASE("replay and concatenation") {
    Formula f = C("((exists x. P(x)) & Q) -> R");
    Trace empty(f);
    CHECK(replay(empty) == f);

    TraceBuilder a(f);
    a.apply({0}, Rule::pull(RuleKind::R4, Quantifier::Exists));
    TraceBuilder b(a.current());
    b.apply({}, Rule::r1());
    Trace joined = concat(a.trace(), b.trace());
    CHECK(joined.steps.size() == 2);
    CHECK(replay(joined) == C("forall x. P(x) & Q -> R"));
    CHECK_THROWS_AS(concat(b.trace(), a.trace()), TraceInvalid);
  }

  TEST_CASE("replay reports the first bad step") {
    Formula f = C("((exists x. P(x)) & Q) | forall y. S(y, y)");
    TraceBuilder b(f);
    b.apply({0}, Rule::pull(RuleKind::R4, Quantifier::Exists));
    b.apply({}, Rule::pull(RuleKind::R6, Quantifier::Exists));
    b.apply({0}, Rule::pull(RuleKind::R7, Quantifier::Forall));
    Trace t = b.trace();
    CHECK_NOTHROW(replay(t));

    Trace corrupt = t;
    corrupt.steps[1].rule = Rule::pull(RuleKind::R6, Quantifier::Forall);
    try {
      replay(corrupt);
      FAIL("expected TraceInvalid");
    } catch (const TraceInvalid& e) {
      CHECK(e.index() == 1);
    }

    Trace wrong_end = t;
    wrong_end.end = f;
    try {
      replay(wrong_end);
      FAIL("expected TraceInvalid");
    } catch (const TraceInvalid& e) {
      CHECK(e.index() == 3);
    }
  }

  TEST_CASE("every offered rule validates and preserves invariants") {
    for (const auto& f : sample(1500)) {
      for (const auto& o : occurrences(f)) {
        for (const auto& app : applicable(f, o)) {
          auto [next, step] = apply(f, o, app.rule);
          CHECK(next == app.result);
          CHECK(validate_step(step, f));
          CHECK(free_vars(next) == free_vars(f));
          CHECK(next.quantifier_count() == f.quantifier_count());
          CHECK(next.connective_count() == f.connective_count());
          if (app.rule.kind == RuleKind::R8) {
            CHECK(pull_measure(next) == pull_measure(f));
            CHECK(alpha_canonical(next) == alpha_canonical(f));
          } else {
            CHECK(pull_measure(next) + 1 == pull_measure(f));
          }
          CHECK(semantically_equivalent(f, next, 2).equivalent);
        }
      }
    }
  }

  TEST_CASE("offered rules are sound on models of size three") {
    for (const auto& f : sample(150)) {
      for (const auto& o : occurrences(f)) {
        for (const auto& app : applicable(f, o)) CHECK(semantically_equivalent(f, app.result, 3).equivalent);
      }
    }
  }

  TEST_CASE("depth from the root is not a termination measure") {
    // Pulling one of two sibling quantifiers keeps the depth sum.
    Formula f = C("(exists x. P(x)) & exists y. Q(y)");
    auto [next, step] = apply(f, {}, Rule::pull(RuleKind::R4, Quantifier::Exists));
    CHECK(depth_sum(next) == depth_sum(f));
    CHECK(pull_measure(next) + 1 == pull_measure(f));
  }
}
