#pragma once

// Theorem-checking suites over a corpus. Each suite checks one family of
// properties on every formula (or every explored rewrite edge) and reports
// the first violation it meets.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prenex/formula.hpp"
#include "prenex/oracle.hpp"

namespace prenex {

enum class Suite {
  Normalization,    // to_prenex output, trace and invariants
  MainTheorem,      // classify against oracle reachability, clauses 1-6
  MT1,              // to_target for every class the formula is in
  Reflection,       // class membership pulled back along explored edges
  ClassicalEquiv,   // explored edges preserve truth on finite models
  Partition,        // disjointness, partition, PF_0, prenex inclusions
  CrossClassifier,  // compositional classifier against alternation paths
  RoundTrip,        // parse/print and trace file round trips
};

std::string_view suite_name(Suite s);
std::optional<Suite> suite_from_name(std::string_view name);
std::vector<Suite> all_suites();

struct VerifyOptions {
  OracleOptions oracle;
  /// Domain sizes 1..max_domain for the semantic checks.
  int max_domain = 2;
  /// Shared rewrite graphs are dropped past this many states.
  std::size_t graph_limit = 2'000'000;
};

struct SuiteResult {
  Suite suite = Suite::Normalization;
  std::size_t items = 0;   // formulas or edges examined
  std::size_t checks = 0;  // individual assertions
  std::size_t failures = 0;
  std::string first_failure;
  double seconds = 0;

  bool passed() const { return failures == 0; }
};

SuiteResult run_suite(Suite suite, const std::vector<Formula>& corpus, const VerifyOptions& options = {});

}  // namespace prenex
