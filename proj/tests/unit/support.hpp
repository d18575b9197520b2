#pragma once

// Shared helpers for the unit tests, including reference implementations
// written directly from the definitions. They are deliberately naive and
// share no code with the library beyond the Formula accessors.

#include <functional>
#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "prenex/corpus.hpp"
#include "prenex/formula.hpp"
#include "prenex/hierarchy.hpp"
#include "prenex/syntax.hpp"

namespace test {

using namespace prenex;

/// Parses with inferred arities; unbound identifiers become constants.
inline Formula C(const std::string& text) { return parse(text); }

/// Parses with unbound identifiers as free variables. Capitalized names are
/// predicates; the arity is read off the argument list.
inline Formula V(const std::string& text) {
  Signature sig;
  std::regex atom(R"(([A-Z][A-Za-z0-9_]*)(\(([^)]*)\))?)");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), atom); it != std::sregex_iterator(); ++it) {
    const std::string args = (*it)[3].str();
    int arity = (*it)[2].matched ? static_cast<int>(std::count(args.begin(), args.end(), ',')) + 1 : 0;
    if (!sig.predicates().count((*it)[1].str())) sig.add_predicate((*it)[1].str(), arity);
  }
  return parse(text, ParseOptions{sig, true});
}

/// A small random corpus with free variables, used by property tests.
inline const std::vector<Formula>& sample(std::size_t count = 3000) {
  static std::map<std::size_t, std::vector<Formula>> cache;
  auto& slot = cache[count];
  if (slot.empty()) {
    RandomCorpusOptions o;
    o.count = count;
    o.seed = 7;
    o.signature.add_constant("c");
    o.signature.add_predicate("S", 2);
    slot = random_corpus(o);
  }
  return slot;
}

// Alternation paths as literal strings over {+,-}; "" is the empty path.
inline std::set<std::string> ref_alt(const Formula& f) {
  if (!f.has_quantifier()) return {""};
  auto flip = [](const std::string& s) {
    std::string out = s;
    for (char& c : out) c = c == '+' ? '-' : '+';
    return out;
  };
  switch (f.kind()) {
    case NodeKind::And:
    case NodeKind::Or: {
      auto a = ref_alt(f.left());
      auto b = ref_alt(f.right());
      a.insert(b.begin(), b.end());
      return a;
    }
    case NodeKind::Implies: {
      std::set<std::string> out;
      for (const auto& s : ref_alt(f.left())) out.insert(flip(s));
      auto b = ref_alt(f.right());
      out.insert(b.begin(), b.end());
      return out;
    }
    default: {
      char sign = f.kind() == NodeKind::Forall ? '-' : '+';
      std::set<std::string> out;
      for (const auto& s : ref_alt(f.body())) out.insert(!s.empty() && s[0] == sign ? s : sign + s);
      return out;
    }
  }
}

struct RefLabel {
  int degree = 0;
  char kind = '0';  // '0', 'E', 'U', 'P'
};

inline RefLabel ref_classify(const Formula& f) {
  auto paths = ref_alt(f);
  RefLabel r;
  for (const auto& s : paths) r.degree = std::max<int>(r.degree, static_cast<int>(s.size()));
  if (r.degree == 0) return r;
  bool plus = false, minus = false;
  for (const auto& s : paths) {
    if (static_cast<int>(s.size()) != r.degree) continue;
    (s[0] == '+' ? plus : minus) = true;
  }
  r.kind = plus && minus ? 'P' : plus ? 'E' : 'U';
  return r;
}

/// Membership in E_k^+ ('E') or U_k^+ ('U') straight from the definition.
inline bool ref_plus(const Formula& f, char family, int k) {
  auto l = ref_classify(f);
  if (l.degree < k) return true;
  if (l.degree > k) return false;
  return l.degree == 0 || l.kind == family;
}

/// Free variables via an explicit binder stack.
inline std::set<std::string> ref_free(const Formula& f, std::vector<std::string> bound = {}) {
  std::set<std::string> out;
  if (f.is_atom()) {
    for (const auto& t : f.args()) {
      if (t.is_variable() && std::find(bound.begin(), bound.end(), t.name) == bound.end()) out.insert(t.name);
    }
    return out;
  }
  if (f.is_quantifier()) bound.push_back(f.variable());
  for (std::size_t i = 0; i < f.arity(); ++i) {
    auto sub = ref_free(f.child(i), bound);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

/// Quantifier string of a prenex formula ("EEA"), or nullopt-like "!" when
/// a quantifier sits below the prefix.
inline std::string ref_prefix(const Formula& f) {
  std::string out;
  const Formula* cur = &f;
  while (cur->is_quantifier()) {
    out += cur->kind() == NodeKind::Exists ? 'E' : 'A';
    cur = &cur->body();
  }
  return cur->has_quantifier() ? "!" : out;
}

inline int ref_blocks(const std::string& prefix) {
  int blocks = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i == 0 || prefix[i] != prefix[i - 1]) ++blocks;
  }
  return blocks;
}

/// Tarskian truth with an explicit environment.
struct RefModel {
  int n = 1;
  std::map<std::string, std::function<bool(const std::vector<int>&)>> predicates;
  std::map<std::string, int> constants;
};

inline bool ref_eval(const Formula& f, const RefModel& m, std::map<std::string, int> env) {
  switch (f.kind()) {
    case NodeKind::Bottom:
      return false;
    case NodeKind::Atom: {
      std::vector<int> args;
      for (const auto& t : f.args()) args.push_back(t.is_variable() ? env.at(t.name) : m.constants.at(t.name));
      return m.predicates.at(f.predicate())(args);
    }
    case NodeKind::And:
      return ref_eval(f.left(), m, env) && ref_eval(f.right(), m, env);
    case NodeKind::Or:
      return ref_eval(f.left(), m, env) || ref_eval(f.right(), m, env);
    case NodeKind::Implies:
      return !ref_eval(f.left(), m, env) || ref_eval(f.right(), m, env);
    default: {
      bool all = true, any = false;
      for (int d = 0; d < m.n; ++d) {
        env[f.variable()] = d;
        bool v = ref_eval(f.body(), m, env);
        all = all && v;
        any = any || v;
      }
      return f.kind() == NodeKind::Forall ? all : any;
    }
  }
}

/// Prenex classes reachable by pulling quantifiers out one at a time, found
/// by plain search on literal formulas. Binders are first renamed apart so no
/// side condition can fail; states are compared structurally, without any
/// canonical renaming. Classes are encoded as (kind char, blocks).
std::set<std::pair<char, int>> ref_reachable_classes(const Formula& f);

}  // namespace test
