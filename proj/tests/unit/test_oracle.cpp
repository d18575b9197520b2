#include <doctest.h>

#include <sstream>

#include "prenex/error.hpp"
#include "prenex/oracle.hpp"
#include "support.hpp"

using namespace test;

namespace {

std::set<std::pair<char, int>> as_pairs(ClassMask mask) {
  std::set<std::pair<char, int>> out;
  for (const auto& c : mask_classes(mask)) {
    if (c.index == 0) {
      out.insert({'0', 0});
    } else {
      out.insert({c.kind == PrenexKind::Sigma ? 'S' : 'P', c.index});
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("class masks") {
    CHECK(class_bit({PrenexKind::Sigma, 0}) == 1);
    CHECK(class_bit({PrenexKind::Pi, 0}) == 1);
    CHECK(class_bit({PrenexKind::Sigma, 1}) == 2);
    CHECK(class_bit({PrenexKind::Pi, 1}) == 4);
    CHECK(class_bit({PrenexKind::Sigma, 2}) == 8);
    ClassMask m = class_bit({PrenexKind::Sigma, 2}) | class_bit({PrenexKind::Pi, 2});
    CHECK(mask_meets_plus(m, PrenexKind::Sigma, 2));
    CHECK_FALSE(mask_meets_plus(m, PrenexKind::Sigma, 1));
    CHECK(mask_meets_plus(m, PrenexKind::Pi, 3));
    CHECK(mask_meets_exact(m, PrenexKind::Pi, 2));
    CHECK_FALSE(mask_meets_exact(m, PrenexKind::Pi, 3));
    CHECK(mask_classes(m).size() == 2);
  }

  TEST_CASE("reachable classes of small formulas") {
    auto pf = reachable(C("(forall x. P(x)) -> forall y. Q(y)"));
    CHECK(pf.min_sigma == 2);
    CHECK(pf.min_pi == 2);
    CHECK(pf.max_k == 2);
    CHECK(pf.sigma_plus == std::vector<bool>{false, false, true});
    CHECK(pf.pi_plus == std::vector<bool>{false, false, true});
    CHECK(pf.prenex.size() == 2);
    CHECK(pf.explored == 5);
    CHECK(pf.edges == 4);

    auto u = reachable(C("(exists x. P(x)) -> false"));
    CHECK_FALSE(u.min_sigma);
    CHECK(u.min_pi == 1);

    auto qf = reachable(C("P & Q"));
    CHECK(qf.min_sigma == 0);
    CHECK(qf.min_pi == 0);
    CHECK(qf.explored == 1);
  }

  TEST_CASE("every edge lowers the pull measure by one") {
    RewriteGraph g;
    for (const auto& f : sample(500)) {
      for (std::size_t id : g.closure(g.add(f))) {
        for (const auto& e : g.successors(id)) CHECK(pull_measure(g.state(e.to)) + 1 == pull_measure(g.state(id)));
      }
    }
  }

  TEST_CASE("graph search agrees with literal search") {
    RewriteGraph g;
    for (const auto& f : sample(1500)) {
      CHECK(as_pairs(g.reachable_classes(g.add(f))) == ref_reachable_classes(f));
    }
  }

  TEST_CASE("reachable() and the memoized graph agree") {
    RewriteGraph g;
    for (const auto& f : sample(300)) CHECK(reachable(f).classes == g.reachable_classes(g.add(f)));
  }

  TEST_CASE("witness traces replay") {
    for (const auto& f : sample(800)) {
      auto r = reachable(f);
      for (int k = 0; k <= r.max_k; ++k) {
        for (PrenexKind kind : {PrenexKind::Sigma, PrenexKind::Pi}) {
          auto w = witness(f, kind, k);
          CHECK(bool(w) == r.reaches_plus(kind, k));
          if (!w) continue;
          CHECK(w->start == f);
          CHECK(replay(*w) == w->end);
          CHECK(in_prenex_class_plus(w->end, kind, k));
        }
      }
    }
  }

  TEST_CASE("expanded paths rename when a side condition fails") {
    Formula f = V("(exists x. P(x)) & Q(x)");
    auto w = witness(f, PrenexKind::Sigma, 1);
    REQUIRE(w);
    REQUIRE(w->steps.size() == 2);
    CHECK(w->steps[0].rule.kind == RuleKind::R8);
    CHECK(w->steps[1].rule.kind == RuleKind::R4);
    CHECK(replay(*w) == w->end);
  }

  TEST_CASE("size bound") {
    OracleOptions small;
    small.max_size = 2;
    CHECK_THROWS_AS(reachable(C("P & Q & R & S"), small), SizeBoundExceeded);
    CHECK_NOTHROW(reachable(C("P & Q"), small));
  }

  TEST_CASE("dot output") {
    RewriteGraph g;
    std::ostringstream out;
    g.write_dot(out, g.add(C("(exists x. P(x)) & Q")));
    std::string dot = out.str();
    CHECK(dot.rfind("digraph rewrites {", 0) == 0);
    CHECK(dot.find("R4-exists []") != std::string::npos);
    CHECK(dot.find("style=bold") != std::string::npos);
  }
}
