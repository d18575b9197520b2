#include <doctest.h>

#include "prenex/error.hpp"
#include "prenex/normalize.hpp"
#include "prenex/semantics.hpp"
#include "support.hpp"

using namespace test;

namespace {

std::vector<std::string> step_tags(const Trace& t) {
  std::vector<std::string> out;
  for (const auto& s : t.steps) out.push_back(s.rule.tag());
  return out;
}

Formula reserved(const std::string& text) { return parse(text, ParseOptions{std::nullopt, true}); }

}  // namespace

TEST_SUITE("normalize") {
  TEST_CASE("quantifier-free input is already prenex") {
    auto [result, trace] = to_prenex(C("P"));
    CHECK(result == C("P"));
    CHECK(trace.steps.empty());
  }

  TEST_CASE("rename then pull") {
    auto [result, trace] = to_prenex(C("(exists x. P(x)) & Q"));
    CHECK(result == reserved("exists _f0. P(_f0) & Q"));
    CHECK(step_tags(trace) == std::vector<std::string>{"R8-exists", "R4-exists"});
    CHECK(replay(trace) == result);
  }

  TEST_CASE("antecedent first") {
    auto [result, trace] = to_prenex(C("(forall x. P(x)) -> forall y. Q(y)"));
    CHECK(result == reserved("exists _f0. forall _f1. P(_f0) -> Q(_f1)"));
    CHECK(prenex_class(result) == PrenexClass{PrenexKind::Sigma, 2});
    CHECK(replay(trace) == result);
  }

  TEST_CASE("to_prenex on generated formulas") {
    for (const auto& f : sample()) {
      auto [result, trace] = to_prenex(f);
      CHECK(is_prenex(result));
      CHECK(replay(trace) == result);
      CHECK(free_vars(result) == free_vars(f));
      CHECK(result.quantifier_count() == f.quantifier_count());
      CHECK(result.connective_count() == f.connective_count());
    }
  }

  TEST_CASE("to_prenex is sound on models up to size three") {
    for (const auto& f : sample(60)) {
      auto eq = semantically_equivalent(f, to_prenex(f).result, 3);
      CHECK(eq.equivalent);
    }
  }

  TEST_CASE("normalizers are deterministic") {
    for (const auto& f : sample(200)) {
      auto a = to_prenex(f);
      auto b = to_prenex(f);
      CHECK(a.result == b.result);
      REQUIRE(a.trace.steps.size() == b.trace.steps.size());
      for (std::size_t i = 0; i < a.trace.steps.size(); ++i) {
        CHECK(a.trace.steps[i].occurrence == b.trace.steps[i].occurrence);
        CHECK(a.trace.steps[i].rule == b.trace.steps[i].rule);
      }
    }
  }

  TEST_CASE("targeted normalization") {
    auto [pi, pi_trace] = to_target(C("(exists x. P(x)) -> false"), PrenexKind::Pi, 1);
    CHECK(pi == reserved("forall _f0. P(_f0) -> false"));
    CHECK(step_tags(pi_trace) == std::vector<std::string>{"R8-exists", "R1"});

    Formula pf = C("(forall x. P(x)) -> forall y. Q(y)");
    auto sigma = to_target(pf, PrenexKind::Sigma, 2);
    CHECK(prenex_class(sigma.result) == PrenexClass{PrenexKind::Sigma, 2});
    CHECK(replay(sigma.trace) == sigma.result);
    auto pi2 = to_target(pf, PrenexKind::Pi, 2);
    CHECK(prenex_class(pi2.result) == PrenexClass{PrenexKind::Pi, 2});
    CHECK(replay(pi2.trace) == pi2.result);

    auto [same, empty] = to_target(C("P"), PrenexKind::Sigma, 0);
    CHECK(same == C("P"));
    CHECK(empty.steps.empty());
  }

  TEST_CASE("targeted normalization checks its precondition") {
    Formula pf = C("(forall x. P(x)) -> forall y. Q(y)");
    try {
      to_target(pf, PrenexKind::Sigma, 1);
      FAIL("expected ClassPreconditionViolated");
    } catch (const ClassPreconditionViolated& e) {
      CHECK(std::string(e.what()).find("PF_1") != std::string::npos);
    }
    CHECK_THROWS_AS(to_target(C("exists x. P(x)"), PrenexKind::Pi, 1), ClassPreconditionViolated);
  }

  TEST_CASE("targeted normalization on generated formulas") {
    for (const auto& f : sample(1500)) {
      int d = degree(f);
      for (int k = 0; k <= d + 1; ++k) {
        for (PrenexKind kind : {PrenexKind::Sigma, PrenexKind::Pi}) {
          auto family = kind == PrenexKind::Sigma ? ClassFamily::EPlus : ClassFamily::UPlus;
          if (!in_class(f, family, k)) continue;
          auto [result, trace] = to_target(f, kind, k);
          CHECK(in_prenex_class_plus(result, kind, k));
          CHECK(replay(trace) == result);
        }
      }
    }
  }

  TEST_CASE("minimal witnesses") {
    auto e = minimal_normalize(C("exists x. P(x)"));
    CHECK(e.label == ClassLabel{1, ClassKind::E});
    REQUIRE(e.sigma);
    CHECK(e.sigma->result == C("exists x. P(x)"));
    CHECK_FALSE(e.pi);

    auto pf = minimal_normalize(C("(forall x. P(x)) -> forall y. Q(y)"));
    CHECK(pf.label == ClassLabel{1, ClassKind::PF});
    REQUIRE(pf.sigma);
    REQUIRE(pf.pi);
    CHECK(prenex_class(pf.sigma->result) == PrenexClass{PrenexKind::Sigma, 2});
    CHECK(prenex_class(pf.pi->result) == PrenexClass{PrenexKind::Pi, 2});

    auto f0 = minimal_normalize(C("P | Q"));
    CHECK(f0.label == ClassLabel{0, ClassKind::F0});
    REQUIRE(f0.sigma);
    REQUIRE(f0.pi);
    CHECK(f0.sigma->result == C("P | Q"));
    CHECK(f0.pi->result == C("P | Q"));
  }

  TEST_CASE("minimal witnesses have exactly the predicted class") {
    for (const auto& f : sample(1500)) {
      auto r = minimal_normalize(f);
      int k = r.label.degree;
      switch (r.label.kind) {
        case ClassKind::F0:
          CHECK((r.sigma && r.pi));
          break;
        case ClassKind::E:
          REQUIRE(r.sigma);
          CHECK_FALSE(r.pi);
          CHECK(prenex_class(r.sigma->result) == PrenexClass{PrenexKind::Sigma, k});
          break;
        case ClassKind::U:
          REQUIRE(r.pi);
          CHECK_FALSE(r.sigma);
          CHECK(prenex_class(r.pi->result) == PrenexClass{PrenexKind::Pi, k});
          break;
        case ClassKind::PF:
          REQUIRE((r.sigma && r.pi));
          CHECK(prenex_class(r.sigma->result) == PrenexClass{PrenexKind::Sigma, k + 1});
          CHECK(prenex_class(r.pi->result) == PrenexClass{PrenexKind::Pi, k + 1});
          break;
      }
    }
  }
}
