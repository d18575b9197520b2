#pragma once

// Alternation paths, degree, and the E/U/PF class hierarchy, plus recognition
// of prenex formulas and their Σ/Π block structure.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prenex/formula.hpp"

namespace prenex {

enum class Sign : std::uint8_t { Plus, Minus };

inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/// The set of alternation paths of a formula. An alternating +/- sequence is
/// determined by its first symbol and its length, so a path is stored as that
/// pair; the empty path is a separate flag.
struct AltSet {
  bool has_empty = false;
  std::set<std::pair<Sign, int>> pairs;

  int max_length() const;
  /// Signs of the paths of length `length`.
  bool has(Sign s, int length) const { return pairs.count({s, length}) != 0; }

  std::string to_string() const;
  friend bool operator==(const AltSet&, const AltSet&) = default;
};

enum class ClassKind : std::uint8_t { F0, E, U, PF };

/// The unique position of a formula: F_0 at degree 0, otherwise exactly one
/// of E_k, U_k, PF_k with k = degree.
struct ClassLabel {
  int degree = 0;
  ClassKind kind = ClassKind::F0;

  std::string to_string() const;
  /// The "prenex degree" bucket C_j with C_{k+1} = PF_k ∪ E_{k+1} ∪ U_{k+1};
  /// quantifier-free formulas are in C_0.
  int prenex_degree() const;
  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

enum class ClassFamily : std::uint8_t { EPlus, UPlus, FPlus, E, U, PF, F };

std::string to_string(ClassFamily family);

enum class PrenexKind : std::uint8_t { Sigma, Pi };

inline PrenexKind dual(PrenexKind k) { return k == PrenexKind::Sigma ? PrenexKind::Pi : PrenexKind::Sigma; }
inline Quantifier leading_quantifier(PrenexKind k) {
  return k == PrenexKind::Sigma ? Quantifier::Exists : Quantifier::Forall;
}
std::string to_string(PrenexKind k);

/// Block structure of a prenex formula. Index 0 is reported as Sigma and
/// matches either kind.
struct PrenexClass {
  PrenexKind kind = PrenexKind::Sigma;
  int index = 0;

  bool is(PrenexKind k, int i) const { return index == i && (i == 0 || kind == k); }
  std::string to_string() const;
  friend bool operator==(const PrenexClass&, const PrenexClass&) = default;
};

AltSet alt(const Formula& f);
int degree(const Formula& f);
ClassLabel classify(const Formula& f);

/// Membership in E_k^+, U_k^+, F_k^+, E_k, U_k, PF_k or F_k.
bool in_class(const ClassLabel& label, ClassFamily family, int k);
bool in_class(const Formula& f, ClassFamily family, int k);

/// E_k^+ / U_k^+ memberships computed bottom-up from the closure rules for
/// connectives and quantifiers alone, without looking at alternation paths.
/// Entries are stored for k = 0..max_k(); larger k repeat the last entry
/// (both families are monotone in k).
class CompositionalRecord {
 public:
  CompositionalRecord(std::vector<bool> e_plus, std::vector<bool> u_plus)
      : e_plus_(std::move(e_plus)), u_plus_(std::move(u_plus)) {}

  bool in_e_plus(int k) const { return at(e_plus_, k); }
  bool in_u_plus(int k) const { return at(u_plus_, k); }
  int max_k() const { return static_cast<int>(e_plus_.size()) - 1; }

 private:
  static bool at(const std::vector<bool>& v, int k) {
    if (k < 0) return false;
    return v[static_cast<std::size_t>(k) < v.size() ? static_cast<std::size_t>(k) : v.size() - 1];
  }
  std::vector<bool> e_plus_;
  std::vector<bool> u_plus_;
};

CompositionalRecord classify_compositional(const Formula& f);

/// Block structure when `f` is a quantifier prefix over a quantifier-free
/// matrix; nullopt otherwise.
std::optional<PrenexClass> prenex_class(const Formula& f);
bool is_prenex(const Formula& f);

/// Σ_k^+ / Π_k^+ membership of a prenex class.
bool in_prenex_class_plus(const PrenexClass& c, PrenexKind kind, int k);
/// Throws NotPrenex.
bool in_prenex_class_plus(const Formula& f, PrenexKind kind, int k);

}  // namespace prenex
