#include "support.hpp"

#include <deque>
#include <unordered_set>

namespace test {

namespace {

Formula rename_apart(const Formula& f, std::map<std::string, std::string>& env, int& next) {
  switch (f.kind()) {
    case NodeKind::Bottom:
      return f;
    case NodeKind::Atom: {
      std::vector<Term> args;
      for (const auto& t : f.args()) {
        auto it = t.is_variable() ? env.find(t.name) : env.end();
        args.push_back(it == env.end() ? t : Term::var(it->second));
      }
      return Formula::atom(f.predicate(), args);
    }
    case NodeKind::Forall:
    case NodeKind::Exists: {
      std::string fresh = "$" + std::to_string(next++);
      auto saved = env;
      env[f.variable()] = fresh;
      Formula body = rename_apart(f.body(), env, next);
      env = saved;
      return Formula::quantified(f.quantifier(), fresh, body);
    }
    default:
      return Formula::binary(f.kind(), rename_apart(f.left(), env, next), rename_apart(f.right(), env, next));
  }
}

// Every formula obtained by one pull somewhere inside `f`.
std::vector<Formula> pulls(const Formula& f) {
  std::vector<Formula> out;
  if (f.is_binary()) {
    for (int side = 0; side < 2; ++side) {
      const Formula& q = f.child(static_cast<std::size_t>(side));
      if (!q.is_quantifier()) continue;
      Quantifier outer = q.quantifier();
      if (f.kind() == NodeKind::Implies && side == 0) outer = dual(outer);
      Formula inner = side == 0 ? Formula::binary(f.kind(), q.body(), f.right())
                                : Formula::binary(f.kind(), f.left(), q.body());
      out.push_back(Formula::quantified(outer, q.variable(), inner));
    }
    for (const auto& l : pulls(f.left())) out.push_back(Formula::binary(f.kind(), l, f.right()));
    for (const auto& r : pulls(f.right())) out.push_back(Formula::binary(f.kind(), f.left(), r));
  } else if (f.is_quantifier()) {
    for (const auto& b : pulls(f.body())) out.push_back(Formula::quantified(f.quantifier(), f.variable(), b));
  }
  return out;
}

}  // namespace

std::set<std::pair<char, int>> ref_reachable_classes(const Formula& f) {
  std::map<std::string, std::string> env;
  int next = 0;
  Formula start = rename_apart(f, env, next);
  std::unordered_set<Formula, FormulaHash> seen{start};
  std::deque<Formula> queue{start};
  std::set<std::pair<char, int>> out;
  while (!queue.empty()) {
    Formula cur = queue.front();
    queue.pop_front();
    std::string prefix = ref_prefix(cur);
    if (prefix != "!") {
      int blocks = ref_blocks(prefix);
      out.insert({blocks == 0 ? '0' : prefix[0] == 'E' ? 'S' : 'P', blocks});
    }
    for (const auto& next_state : pulls(cur)) {
      if (seen.insert(next_state).second) queue.push_back(next_state);
    }
  }
  return out;
}

}  // namespace test
