#pragma once

// First-order formulas over a relational signature with constants.
//
// Formulas are immutable trees of shared nodes. Copying a Formula is a
// reference-count bump; every operation here is a pure function, so values
// may be shared freely between threads.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace prenex {

enum class NodeKind : std::uint8_t { Atom, Bottom, And, Or, Implies, Forall, Exists };

enum class Quantifier : std::uint8_t { Forall, Exists };

inline Quantifier dual(Quantifier q) {
  return q == Quantifier::Forall ? Quantifier::Exists : Quantifier::Forall;
}

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };

  Kind kind = Kind::Variable;
  std::string name;

  static Term var(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }

  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

class Formula {
 public:
  struct Node;

  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula bottom();
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula implies(Formula left, Formula right);
  static Formula forall(std::string variable, Formula body);
  static Formula exists(std::string variable, Formula body);
  /// `kind` must be And, Or or Implies.
  static Formula binary(NodeKind kind, Formula left, Formula right);
  static Formula quantified(Quantifier q, std::string variable, Formula body);

  NodeKind kind() const;
  bool is_atom() const { return kind() == NodeKind::Atom; }
  bool is_bottom() const { return kind() == NodeKind::Bottom; }
  bool is_binary() const;
  bool is_quantifier() const;
  /// Only meaningful when is_quantifier().
  Quantifier quantifier() const;

  /// Predicate name of an atom.
  const std::string& predicate() const;
  const std::vector<Term>& args() const;
  /// Bound variable of a quantifier node.
  const std::string& variable() const;

  const Formula& left() const { return child(0); }
  const Formula& right() const { return child(1); }
  const Formula& body() const { return child(0); }
  const Formula& child(std::size_t i) const;
  std::size_t arity() const;

  std::size_t hash() const;
  std::size_t node_count() const;
  std::size_t quantifier_count() const;
  std::size_t connective_count() const;
  bool has_quantifier() const { return quantifier_count() != 0; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  NodeKind kind;
  std::string name;  // predicate or bound variable
  std::vector<Term> args;
  std::vector<Formula> children;
  std::size_t hash = 0;
  std::size_t nodes = 1;
  std::size_t quantifiers = 0;
  std::size_t connectives = 0;
};

inline NodeKind Formula::kind() const { return node_->kind; }
inline const Formula& Formula::child(std::size_t i) const { return node_->children[i]; }
inline std::size_t Formula::arity() const { return node_->children.size(); }
inline std::size_t Formula::hash() const { return node_->hash; }
inline std::size_t Formula::node_count() const { return node_->nodes; }
inline std::size_t Formula::quantifier_count() const { return node_->quantifiers; }
inline std::size_t Formula::connective_count() const { return node_->connectives; }
inline const std::string& Formula::predicate() const { return node_->name; }
inline const std::string& Formula::variable() const { return node_->name; }
inline const std::vector<Term>& Formula::args() const { return node_->args; }
inline bool Formula::is_binary() const {
  auto k = kind();
  return k == NodeKind::And || k == NodeKind::Or || k == NodeKind::Implies;
}
inline bool Formula::is_quantifier() const {
  return kind() == NodeKind::Forall || kind() == NodeKind::Exists;
}
inline Quantifier Formula::quantifier() const {
  return kind() == NodeKind::Forall ? Quantifier::Forall : Quantifier::Exists;
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

/// Path of child indices from the root (0 = left or body, 1 = right).
class Occurrence {
 public:
  Occurrence() = default;
  Occurrence(std::initializer_list<int> path);
  explicit Occurrence(std::vector<std::uint8_t> path) : path_(std::move(path)) {}

  const std::vector<std::uint8_t>& path() const { return path_; }
  bool is_root() const { return path_.empty(); }
  std::size_t depth() const { return path_.size(); }
  Occurrence child(int i) const;
  /// Concatenation: `other` interpreted relative to this occurrence.
  Occurrence operator+(const Occurrence& other) const;

  std::string to_string() const;

  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;

 private:
  std::vector<std::uint8_t> path_;
};

/// Predicates with arities plus constant names. Names are unique across both.
class Signature {
 public:
  void add_predicate(const std::string& name, int arity);
  void add_constant(const std::string& name);

  bool has_predicate(const std::string& name) const { return predicates_.count(name) != 0; }
  bool has_constant(const std::string& name) const { return constants_.count(name) != 0; }
  /// -1 when undeclared.
  int arity(const std::string& name) const;

  const std::map<std::string, int>& predicates() const { return predicates_; }
  const std::set<std::string>& constants() const { return constants_; }

  /// Smallest signature covering every predicate and constant of `f`.
  static Signature of(const Formula& f);
  /// Adds everything declared in `other`; throws SignatureError on conflicts.
  void merge(const Signature& other);

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, int> predicates_;
  std::set<std::string> constants_;
};

std::set<std::string> free_vars(const Formula& f);
bool is_free_in(const std::string& variable, const Formula& f);
bool is_quantifier_free(const Formula& f);

/// Every variable name that occurs anywhere in `f`: free, bound or as a binder.
std::set<std::string> variable_names(const Formula& f);
/// True iff `name` occurs in `f` as a variable (free, bound, or binder).
bool variable_occurs(const std::string& name, const Formula& f);
std::set<std::string> constant_names(const Formula& f);

/// Throws InvalidOccurrence when the path leaves the tree.
const Formula& subformula_at(const Formula& f, const Occurrence& o);
/// Literal replacement of one occurrence; no capture avoidance.
Formula replace_at(const Formula& f, const Occurrence& o, const Formula& replacement);
/// All occurrences in pre-order (root first, left before right).
std::vector<Occurrence> occurrences(const Formula& f);

/// Replaces free occurrences of variable `from` by variable `to`.
/// The caller guarantees `to` cannot be captured.
Formula rename_free(const Formula& f, const std::string& from, const std::string& to);

/// Reserved prefixes. The parser rejects them in user input.
inline constexpr std::string_view kCanonicalPrefix = "_b";
inline constexpr std::string_view kFreshPrefix = "_f";
bool is_reserved_name(std::string_view name);

/// Least `_f<i>` not in `avoid`.
std::string fresh_variable(const std::set<std::string>& avoid);

/// Renames binders to `_b0, _b1, ...` in pre-order. Alpha-variants map to the
/// same formula; free variables are untouched.
Formula alpha_canonical(const Formula& f);

/// Sum over quantifier nodes of the number of binary connectives above them.
/// Every quantifier pull lowers it by exactly one; renaming keeps it.
std::size_t pull_measure(const Formula& f);

}  // namespace prenex
