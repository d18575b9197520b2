#include "prenex/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "prenex/error.hpp"

namespace prenex {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::shared_ptr<Formula::Node> make_node(NodeKind kind) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  return n;
}

void finish(Formula::Node& n) {
  std::size_t h = mix(0, static_cast<std::size_t>(n.kind));
  h = mix(h, std::hash<std::string>{}(n.name));
  for (const auto& t : n.args) {
    h = mix(h, static_cast<std::size_t>(t.kind));
    h = mix(h, std::hash<std::string>{}(t.name));
  }
  for (const auto& c : n.children) {
    h = mix(h, c.hash());
    n.nodes += c.node_count();
    n.quantifiers += c.quantifier_count();
    n.connectives += c.connective_count();
  }
  if (n.kind == NodeKind::Forall || n.kind == NodeKind::Exists) ++n.quantifiers;
  if (n.kind == NodeKind::And || n.kind == NodeKind::Or || n.kind == NodeKind::Implies) ++n.connectives;
  n.hash = h;
}

}  // namespace

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  auto n = make_node(NodeKind::Atom);
  n->name = std::move(predicate);
  n->args = std::move(args);
  finish(*n);
  return Formula(std::move(n));
}

Formula Formula::bottom() {
  static const Formula instance = [] {
    auto n = make_node(NodeKind::Bottom);
    finish(*n);
    return Formula(std::move(n));
  }();
  return instance;
}

Formula Formula::binary(NodeKind kind, Formula left, Formula right) {
  auto n = make_node(kind);
  n->children.reserve(2);
  n->children.push_back(std::move(left));
  n->children.push_back(std::move(right));
  finish(*n);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula left, Formula right) { return binary(NodeKind::And, std::move(left), std::move(right)); }
Formula Formula::disj(Formula left, Formula right) { return binary(NodeKind::Or, std::move(left), std::move(right)); }
Formula Formula::implies(Formula left, Formula right) {
  return binary(NodeKind::Implies, std::move(left), std::move(right));
}

Formula Formula::quantified(Quantifier q, std::string variable, Formula body) {
  auto n = make_node(q == Quantifier::Forall ? NodeKind::Forall : NodeKind::Exists);
  n->name = std::move(variable);
  n->children.push_back(std::move(body));
  finish(*n);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string variable, Formula body) {
  return quantified(Quantifier::Forall, std::move(variable), std::move(body));
}
Formula Formula::exists(std::string variable, Formula body) {
  return quantified(Quantifier::Exists, std::move(variable), std::move(body));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.nodes != y.nodes || x.name != y.name || x.args != y.args) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Occurrence::Occurrence(std::initializer_list<int> path) {
  path_.reserve(path.size());
  for (int i : path) path_.push_back(static_cast<std::uint8_t>(i));
}

Occurrence Occurrence::child(int i) const {
  auto p = path_;
  p.push_back(static_cast<std::uint8_t>(i));
  return Occurrence(std::move(p));
}

Occurrence Occurrence::operator+(const Occurrence& other) const {
  auto p = path_;
  p.insert(p.end(), other.path_.begin(), other.path_.end());
  return Occurrence(std::move(p));
}

std::string Occurrence::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(path_[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

void Signature::add_predicate(const std::string& name, int arity) {
  if (arity < 0) throw SignatureError("negative arity for predicate '" + name + "'");
  if (constants_.count(name)) throw SignatureError("'" + name + "' is already a constant");
  auto [it, inserted] = predicates_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw ArityMismatch("predicate '" + name + "' used with arity " + std::to_string(arity) +
                        " but declared with arity " + std::to_string(it->second));
  }
}

void Signature::add_constant(const std::string& name) {
  if (predicates_.count(name)) throw SignatureError("'" + name + "' is already a predicate");
  constants_.insert(name);
}

int Signature::arity(const std::string& name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? -1 : it->second;
}

Signature Signature::of(const Formula& f) {
  Signature sig;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atom()) {
      sig.add_predicate(g.predicate(), static_cast<int>(g.args().size()));
      for (const auto& t : g.args()) {
        if (!t.is_variable()) sig.add_constant(t.name);
      }
      return;
    }
    for (std::size_t i = 0; i < g.arity(); ++i) walk(g.child(i));
  };
  walk(f);
  return sig;
}

void Signature::merge(const Signature& other) {
  for (const auto& [name, arity] : other.predicates_) add_predicate(name, arity);
  for (const auto& c : other.constants_) add_constant(c);
}

// ---------------------------------------------------------------------------

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case NodeKind::Atom:
      for (const auto& t : f.args()) {
        if (t.is_variable() && std::find(bound.begin(), bound.end(), t.name) == bound.end()) out.insert(t.name);
      }
      return;
    case NodeKind::Bottom:
      return;
    case NodeKind::Forall:
    case NodeKind::Exists:
      bound.push_back(f.variable());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

bool is_free_in(const std::string& variable, const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Atom:
      return std::any_of(f.args().begin(), f.args().end(),
                         [&](const Term& t) { return t.is_variable() && t.name == variable; });
    case NodeKind::Bottom:
      return false;
    case NodeKind::Forall:
    case NodeKind::Exists:
      return f.variable() != variable && is_free_in(variable, f.body());
    default:
      return is_free_in(variable, f.left()) || is_free_in(variable, f.right());
  }
}

bool is_quantifier_free(const Formula& f) { return !f.has_quantifier(); }

std::set<std::string> variable_names(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atom()) {
      for (const auto& t : g.args()) {
        if (t.is_variable()) out.insert(t.name);
      }
      return;
    }
    if (g.is_quantifier()) out.insert(g.variable());
    for (std::size_t i = 0; i < g.arity(); ++i) walk(g.child(i));
  };
  walk(f);
  return out;
}

bool variable_occurs(const std::string& name, const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Atom:
      return std::any_of(f.args().begin(), f.args().end(),
                         [&](const Term& t) { return t.is_variable() && t.name == name; });
    case NodeKind::Bottom:
      return false;
    case NodeKind::Forall:
    case NodeKind::Exists:
      return f.variable() == name || variable_occurs(name, f.body());
    default:
      return variable_occurs(name, f.left()) || variable_occurs(name, f.right());
  }
}

std::set<std::string> constant_names(const Formula& f) { return Signature::of(f).constants(); }

const Formula& subformula_at(const Formula& f, const Occurrence& o) {
  const Formula* cur = &f;
  for (std::size_t i = 0; i < o.path().size(); ++i) {
    auto step = o.path()[i];
    if (step >= cur->arity()) {
      throw InvalidOccurrence("occurrence " + o.to_string() + " leaves the formula at depth " + std::to_string(i));
    }
    cur = &cur->child(step);
  }
  return *cur;
}

namespace {

Formula rebuild(const Formula& f, const Formula* const* children) {
  if (f.is_quantifier()) return Formula::quantified(f.quantifier(), f.variable(), *children[0]);
  return Formula::binary(f.kind(), *children[0], *children[1]);
}

Formula replace_rec(const Formula& f, const Occurrence& o, std::size_t depth, const Formula& replacement) {
  if (depth == o.depth()) return replacement;
  auto step = o.path()[depth];
  if (step >= f.arity()) {
    throw InvalidOccurrence("occurrence " + o.to_string() + " leaves the formula at depth " + std::to_string(depth));
  }
  Formula replaced = replace_rec(f.child(step), o, depth + 1, replacement);
  const Formula* kids[2] = {&f.child(0), f.arity() > 1 ? &f.child(1) : nullptr};
  kids[step] = &replaced;
  return rebuild(f, kids);
}

}  // namespace

Formula replace_at(const Formula& f, const Occurrence& o, const Formula& replacement) {
  return replace_rec(f, o, 0, replacement);
}

std::vector<Occurrence> occurrences(const Formula& f) {
  std::vector<Occurrence> out;
  out.reserve(f.node_count());
  std::vector<std::uint8_t> path;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    out.emplace_back(path);
    for (std::size_t i = 0; i < g.arity(); ++i) {
      path.push_back(static_cast<std::uint8_t>(i));
      walk(g.child(i));
      path.pop_back();
    }
  };
  walk(f);
  return out;
}

Formula rename_free(const Formula& f, const std::string& from, const std::string& to) {
  switch (f.kind()) {
    case NodeKind::Atom: {
      bool touched = false;
      auto args = f.args();
      for (auto& t : args) {
        if (t.is_variable() && t.name == from) {
          t.name = to;
          touched = true;
        }
      }
      return touched ? Formula::atom(f.predicate(), std::move(args)) : f;
    }
    case NodeKind::Bottom:
      return f;
    case NodeKind::Forall:
    case NodeKind::Exists:
      if (f.variable() == from) return f;
      return Formula::quantified(f.quantifier(), f.variable(), rename_free(f.body(), from, to));
    default:
      return Formula::binary(f.kind(), rename_free(f.left(), from, to), rename_free(f.right(), from, to));
  }
}

bool is_reserved_name(std::string_view name) {
  auto reserved_with = [&](std::string_view prefix) {
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return false;
    return std::all_of(name.begin() + prefix.size(), name.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  return reserved_with(kCanonicalPrefix) || reserved_with(kFreshPrefix);
}

std::string fresh_variable(const std::set<std::string>& avoid) {
  for (std::size_t i = 0;; ++i) {
    std::string name = std::string(kFreshPrefix) + std::to_string(i);
    if (!avoid.count(name)) return name;
  }
}

namespace {

struct Canonicalizer {
  std::size_t next = 0;
  std::vector<std::pair<std::string, std::string>> env;  // innermost last

  const std::string* lookup(const std::string& name) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case NodeKind::Atom: {
        auto args = f.args();
        for (auto& t : args) {
          if (!t.is_variable()) continue;
          if (const auto* renamed = lookup(t.name)) t.name = *renamed;
        }
        return Formula::atom(f.predicate(), std::move(args));
      }
      case NodeKind::Bottom:
        return f;
      case NodeKind::Forall:
      case NodeKind::Exists: {
        std::string name = std::string(kCanonicalPrefix) + std::to_string(next++);
        env.emplace_back(f.variable(), name);
        Formula body = run(f.body());
        env.pop_back();
        return Formula::quantified(f.quantifier(), std::move(name), std::move(body));
      }
      default: {
        Formula l = run(f.left());
        Formula r = run(f.right());
        return Formula::binary(f.kind(), std::move(l), std::move(r));
      }
    }
  }
};

std::size_t measure_rec(const Formula& f, std::size_t connectives_above) {
  std::size_t total = 0;
  if (f.is_quantifier()) total += connectives_above;
  if (!f.has_quantifier()) return total;
  std::size_t below = connectives_above + (f.is_binary() ? 1 : 0);
  for (std::size_t i = 0; i < f.arity(); ++i) total += measure_rec(f.child(i), below);
  return total;
}

}  // namespace

Formula alpha_canonical(const Formula& f) {
  Canonicalizer c;
  return c.run(f);
}

std::size_t pull_measure(const Formula& f) { return measure_rec(f, 0); }

}  // namespace prenex
