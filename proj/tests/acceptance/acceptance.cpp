// Runs every acceptance criterion on the default corpus with zero tolerance
// and prints one line per criterion.

#include <cstdio>
#include <string>
#include <vector>

#include "prenex/corpus.hpp"
#include "prenex/verify.hpp"

namespace {

struct Criterion {
  int number;
  const char* title;
  std::vector<prenex::Suite> suites;
};

}  // namespace

int main() {
  using prenex::Suite;
  const std::vector<Criterion> criteria{
      {1, "normalization", {Suite::Normalization}},
      {2, "main theorem, clauses 1-6", {Suite::MainTheorem}},
      {3, "targeted normalization", {Suite::MT1}},
      {4, "reflection along rewrite edges", {Suite::Reflection}},
      {5, "classical soundness of rules", {Suite::ClassicalEquiv}},
      {6, "classification structure", {Suite::Partition, Suite::CrossClassifier}},
      {7, "round trips", {Suite::RoundTrip}},
  };

  const auto corpus = prenex::default_corpus();
  std::printf("corpus: %zu formulas\n", corpus.size());
  std::fflush(stdout);

  int failed = 0;
  for (const auto& c : criteria) {
    std::size_t items = 0, checks = 0, failures = 0;
    double seconds = 0;
    std::string first;
    for (Suite s : c.suites) {
      auto r = prenex::run_suite(s, corpus);
      items += r.items;
      checks += r.checks;
      failures += r.failures;
      seconds += r.seconds;
      if (first.empty() && !r.passed()) first = std::string(prenex::suite_name(s)) + ": " + r.first_failure;
    }
    bool ok = failures == 0 && checks > 0;
    if (!ok) ++failed;
    std::printf("criterion %d %-34s %s  items=%zu checks=%zu failures=%zu  %.1fs\n", c.number, c.title,
                ok ? "PASS" : "FAIL", items, checks, failures, seconds);
    if (!first.empty()) std::printf("  first failure: %s\n", first.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
