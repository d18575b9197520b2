#pragma once

// Classical truth over finite domains {0, ..., n-1}, and equivalence checking
// by enumerating every interpretation up to a domain size.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prenex/formula.hpp"

namespace prenex {

struct Interpretation {
  int domain_size = 1;
  /// Truth table of each predicate over domain_size^arity tuples; the tuple
  /// (a_0, ..., a_{m-1}) sits at index a_0 + a_1 n + ... + a_{m-1} n^{m-1}.
  std::map<std::string, std::vector<bool>> predicates;
  std::map<std::string, int> constants;
  /// Values of free variables.
  std::map<std::string, int> variables;

  std::string to_string() const;
};

/// Throws UncoveredSymbol when a predicate, constant or free variable of `f`
/// has no value in `i`.
bool evaluate(const Formula& f, const Interpretation& i);

/// Symbols an interpretation must cover.
struct Vocabulary {
  std::map<std::string, int> predicates;
  std::set<std::string> constants;
  std::set<std::string> variables;

  static Vocabulary of(const Formula& f);
  void merge(const Vocabulary& other);
  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

/// Number of interpretations of `v` with domain sizes 1..max_domain.
std::size_t interpretation_count(const Vocabulary& v, int max_domain);

/// Calls `visit` on every interpretation of `v`, domain sizes 1..max_domain,
/// in a fixed order; stops early when `visit` returns false.
void for_each_interpretation(const Vocabulary& v, int max_domain,
                             const std::function<bool(const Interpretation&)>& visit);

/// Truth value of `f` on every interpretation of `v` in enumeration order.
/// `v` must cover `f`.
std::vector<bool> truth_vector(const Formula& f, const Vocabulary& v, int max_domain);

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<Interpretation> counterexample;
  std::size_t interpretations = 0;
};

EquivalenceResult semantically_equivalent(const Formula& a, const Formula& b, int max_domain = 2);

}  // namespace prenex
