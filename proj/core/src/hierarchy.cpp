#include "prenex/hierarchy.hpp"

#include <algorithm>

#include "prenex/error.hpp"
#include "prenex/syntax.hpp"

namespace prenex {

int AltSet::max_length() const {
  int m = 0;
  for (const auto& [sign, len] : pairs) m = std::max(m, len);
  return m;
}

std::string AltSet::to_string() const {
  std::string out = "{";
  bool first = true;
  if (has_empty) {
    out += "<>";
    first = false;
  }
  for (const auto& [sign, len] : pairs) {
    if (!first) out += ", ";
    first = false;
    out += sign == Sign::Plus ? '+' : '-';
    out += std::to_string(len);
  }
  return out + "}";
}

std::string ClassLabel::to_string() const {
  switch (kind) {
    case ClassKind::F0:
      return "F_0";
    case ClassKind::E:
      return "E_" + std::to_string(degree);
    case ClassKind::U:
      return "U_" + std::to_string(degree);
    case ClassKind::PF:
      return "PF_" + std::to_string(degree);
  }
  return "?";
}

int ClassLabel::prenex_degree() const {
  switch (kind) {
    case ClassKind::F0:
      return 0;
    case ClassKind::PF:
      return degree + 1;
    default:
      return degree;
  }
}

std::string to_string(ClassFamily family) {
  switch (family) {
    case ClassFamily::EPlus:
      return "E+";
    case ClassFamily::UPlus:
      return "U+";
    case ClassFamily::FPlus:
      return "F+";
    case ClassFamily::E:
      return "E";
    case ClassFamily::U:
      return "U";
    case ClassFamily::PF:
      return "PF";
    case ClassFamily::F:
      return "F";
  }
  return "?";
}

std::string to_string(PrenexKind k) { return k == PrenexKind::Sigma ? "Sigma" : "Pi"; }

std::string PrenexClass::to_string() const {
  if (index == 0) return "Sigma_0/Pi_0";
  return prenex::to_string(kind) + "_" + std::to_string(index);
}

namespace {

// Paths of ∀φ / ∃φ: those already starting with the quantifier's sign stay,
// every other path (including the empty one) gets the sign prepended.
AltSet prefix(const AltSet& inner, Sign s) {
  AltSet out;
  if (inner.has_empty) out.pairs.insert({s, 1});
  for (const auto& [sign, len] : inner.pairs) {
    if (sign == s) {
      out.pairs.insert({sign, len});
    } else {
      out.pairs.insert({s, len + 1});
    }
  }
  return out;
}

AltSet alt_rec(const Formula& f) {
  if (!f.has_quantifier()) {
    AltSet base;
    base.has_empty = true;
    return base;
  }
  switch (f.kind()) {
    case NodeKind::And:
    case NodeKind::Or: {
      AltSet out = alt_rec(f.left());
      AltSet r = alt_rec(f.right());
      out.has_empty = out.has_empty || r.has_empty;
      out.pairs.insert(r.pairs.begin(), r.pairs.end());
      return out;
    }
    case NodeKind::Implies: {
      AltSet l = alt_rec(f.left());
      AltSet out = alt_rec(f.right());
      out.has_empty = out.has_empty || l.has_empty;
      for (const auto& [sign, len] : l.pairs) out.pairs.insert({flip(sign), len});
      return out;
    }
    case NodeKind::Forall:
      return prefix(alt_rec(f.body()), Sign::Minus);
    case NodeKind::Exists:
      return prefix(alt_rec(f.body()), Sign::Plus);
    default:
      return {};  // atoms are quantifier-free
  }
}

}  // namespace

AltSet alt(const Formula& f) { return alt_rec(f); }

int degree(const Formula& f) { return alt(f).max_length(); }

ClassLabel classify(const Formula& f) {
  AltSet a = alt(f);
  int k = a.max_length();
  if (k == 0) return {0, ClassKind::F0};
  bool plus = a.has(Sign::Plus, k);
  bool minus = a.has(Sign::Minus, k);
  if (plus && minus) return {k, ClassKind::PF};
  return {k, plus ? ClassKind::E : ClassKind::U};
}

bool in_class(const ClassLabel& label, ClassFamily family, int k) {
  if (k < 0) return false;
  int d = label.degree;
  switch (family) {
    case ClassFamily::F:
      return d == k;
    case ClassFamily::FPlus:
      return d <= k;
    case ClassFamily::E:
      return d == k && (label.kind == ClassKind::E || label.kind == ClassKind::F0);
    case ClassFamily::U:
      return d == k && (label.kind == ClassKind::U || label.kind == ClassKind::F0);
    case ClassFamily::PF:
      return d == k && label.kind == ClassKind::PF;
    case ClassFamily::EPlus:
      return d < k || in_class(label, ClassFamily::E, k);
    case ClassFamily::UPlus:
      return d < k || in_class(label, ClassFamily::U, k);
  }
  return false;
}

bool in_class(const Formula& f, ClassFamily family, int k) { return in_class(classify(f), family, k); }

namespace {

struct Memberships {
  std::vector<bool> e;
  std::vector<bool> u;
};

// One entry per k in [0, top]. The quantifier clauses only hold from k = 1 on;
// at k = 0 the classes are the quantifier-free formulas.
Memberships compose(const Formula& f, int top) {
  std::size_t n = static_cast<std::size_t>(top) + 1;
  Memberships m{std::vector<bool>(n), std::vector<bool>(n)};
  switch (f.kind()) {
    case NodeKind::Atom:
    case NodeKind::Bottom:
      m.e.assign(n, true);
      m.u.assign(n, true);
      return m;
    case NodeKind::And:
    case NodeKind::Or: {
      auto l = compose(f.left(), top);
      auto r = compose(f.right(), top);
      for (std::size_t k = 0; k < n; ++k) {
        m.e[k] = l.e[k] && r.e[k];
        m.u[k] = l.u[k] && r.u[k];
      }
      return m;
    }
    case NodeKind::Implies: {
      auto l = compose(f.left(), top);
      auto r = compose(f.right(), top);
      for (std::size_t k = 0; k < n; ++k) {
        m.e[k] = l.u[k] && r.e[k];
        m.u[k] = l.e[k] && r.u[k];
      }
      return m;
    }
    case NodeKind::Forall: {
      auto b = compose(f.body(), top);
      for (std::size_t k = 1; k < n; ++k) {
        m.u[k] = b.u[k];          // ∀xφ ∈ U_k^+ iff φ ∈ U_k^+
        m.e[k] = m.u[k - 1];      // ∀xφ ∈ E_{k+1}^+ iff ∀xφ ∈ U_k^+
      }
      return m;
    }
    case NodeKind::Exists: {
      auto b = compose(f.body(), top);
      for (std::size_t k = 1; k < n; ++k) {
        m.e[k] = b.e[k];          // ∃xφ ∈ E_k^+ iff φ ∈ E_k^+
        m.u[k] = m.e[k - 1];      // ∃xφ ∈ U_{k+1}^+ iff ∃xφ ∈ E_k^+
      }
      return m;
    }
  }
  return m;
}

}  // namespace

CompositionalRecord classify_compositional(const Formula& f) {
  // Degree never exceeds the quantifier count, so one more level saturates.
  int top = static_cast<int>(f.quantifier_count()) + 1;
  auto m = compose(f, top);
  return CompositionalRecord(std::move(m.e), std::move(m.u));
}

std::optional<PrenexClass> prenex_class(const Formula& f) {
  const Formula* cur = &f;
  std::optional<Quantifier> first;
  std::optional<Quantifier> last;
  int blocks = 0;
  while (cur->is_quantifier()) {
    Quantifier q = cur->quantifier();
    if (!last || *last != q) ++blocks;
    if (!first) first = q;
    last = q;
    cur = &cur->body();
  }
  if (cur->has_quantifier()) return std::nullopt;
  if (blocks == 0) return PrenexClass{PrenexKind::Sigma, 0};
  return PrenexClass{*first == Quantifier::Exists ? PrenexKind::Sigma : PrenexKind::Pi, blocks};
}

bool is_prenex(const Formula& f) { return prenex_class(f).has_value(); }

bool in_prenex_class_plus(const PrenexClass& c, PrenexKind kind, int k) {
  if (c.index < k) return true;
  return c.index == k && (k == 0 || c.kind == kind);
}

bool in_prenex_class_plus(const Formula& f, PrenexKind kind, int k) {
  auto c = prenex_class(f);
  if (!c) throw NotPrenex("not in prenex normal form: " + print(f));
  return in_prenex_class_plus(*c, kind, k);
}

}  // namespace prenex
