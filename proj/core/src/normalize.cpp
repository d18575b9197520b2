#include "prenex/normalize.hpp"

#include <stdexcept>
#include <vector>

#include "prenex/error.hpp"
#include "prenex/syntax.hpp"

namespace prenex {

namespace {

Rule pull_rule(NodeKind conn, int side, Quantifier q) {
  switch (conn) {
    case NodeKind::And:
      return Rule::pull(side == 0 ? RuleKind::R4 : RuleKind::R5, q);
    case NodeKind::Or:
      return Rule::pull(side == 0 ? RuleKind::R6 : RuleKind::R7, q);
    default:
      if (side == 1) return Rule::pull(RuleKind::R3, q);
      return q == Quantifier::Exists ? Rule::r1() : Rule::r2();
  }
}

// Renames the leading binder of operand `side` fresh, then pulls it in front
// of the connective at `at`.
void pull(TraceBuilder& b, const Occurrence& at, int side) {
  const Formula f = b.at(at);
  const Formula& q = f.child(static_cast<std::size_t>(side));
  b.apply(at.child(side), Rule::rename(q.quantifier(), b.fresh()));
  b.apply(at, pull_rule(f.kind(), side, q.quantifier()));
}

void prenex_at(TraceBuilder& b, const Occurrence& at) {
  const Formula f = b.at(at);
  if (!f.has_quantifier()) return;
  if (f.is_quantifier()) {
    prenex_at(b, at.child(0));
    return;
  }
  int side = f.left().has_quantifier() ? 0 : 1;
  prenex_at(b, at.child(side));
  pull(b, at, side);
  prenex_at(b, at.child(0));
}

std::vector<Quantifier> prefix_of(const Formula& f) {
  std::vector<Quantifier> out;
  for (const Formula* cur = &f; cur->is_quantifier(); cur = &cur->body()) out.push_back(cur->quantifier());
  return out;
}

struct MergePlan {
  std::vector<int> sides;
  PrenexClass result;
};

// Interleaves the two prefixes block by block: starting with `first`, take
// every leading quantifier of that kind from the left operand, then from the
// right, then switch kinds. `left` is already adjusted for the sign flip of
// an antecedent.
MergePlan plan_merge(const std::vector<Quantifier>& left, const std::vector<Quantifier>& right, Quantifier first) {
  MergePlan plan;
  std::size_t i = 0, j = 0;
  Quantifier cur = first;
  std::optional<Quantifier> last;
  int blocks = 0;
  std::optional<Quantifier> lead;
  auto take = [&](int side, Quantifier q) {
    plan.sides.push_back(side);
    if (!last || *last != q) ++blocks;
    if (!lead) lead = q;
    last = q;
  };
  while (i < left.size() || j < right.size()) {
    while (i < left.size() && left[i] == cur) take(0, left[i++]);
    while (j < right.size() && right[j] == cur) take(1, right[j++]);
    cur = dual(cur);
  }
  plan.result = blocks == 0 ? PrenexClass{PrenexKind::Sigma, 0}
                            : PrenexClass{*lead == Quantifier::Exists ? PrenexKind::Sigma : PrenexKind::Pi, blocks};
  return plan;
}

// Both operands of the connective at `at` are prenex; pull their prefixes out
// so the result lands in Σ_k^+ / Π_k^+.
void merge(TraceBuilder& b, const Occurrence& at, PrenexKind kind, int k) {
  const Formula f = b.at(at);
  auto left = prefix_of(f.left());
  auto right = prefix_of(f.right());
  if (f.kind() == NodeKind::Implies) {
    for (auto& q : left) q = dual(q);
  }
  std::optional<MergePlan> chosen;
  for (Quantifier first : {leading_quantifier(kind), dual(leading_quantifier(kind))}) {
    auto plan = plan_merge(left, right, first);
    if (in_prenex_class_plus(plan.result, kind, k)) {
      chosen = std::move(plan);
      break;
    }
  }
  if (!chosen) {
    throw std::logic_error("no block interleaving of " + print(f) + " lies in " + to_string(kind) + "_" +
                           std::to_string(k) + "^+");
  }
  Occurrence cur = at;
  for (int side : chosen->sides) {
    pull(b, cur, side);
    cur = cur.child(0);
  }
}

void target_at(TraceBuilder& b, const Occurrence& at, PrenexKind kind, int k) {
  const Formula f = b.at(at);
  if (!f.has_quantifier()) return;
  if (!in_class(f, kind == PrenexKind::Sigma ? ClassFamily::EPlus : ClassFamily::UPlus, k)) {
    throw std::logic_error("class invariant lost at " + at.to_string() + ": " + print(f));
  }
  switch (f.kind()) {
    case NodeKind::And:
    case NodeKind::Or:
      target_at(b, at.child(0), kind, k);
      target_at(b, at.child(1), kind, k);
      merge(b, at, kind, k);
      return;
    case NodeKind::Implies:
      target_at(b, at.child(0), dual(kind), k);
      target_at(b, at.child(1), kind, k);
      merge(b, at, kind, k);
      return;
    case NodeKind::Exists:
      // ∃xφ ∈ E_k^+ needs φ ∈ E_k^+; ∃xφ ∈ U_k^+ needs φ ∈ E_{k-1}^+.
      target_at(b, at.child(0), PrenexKind::Sigma, kind == PrenexKind::Sigma ? k : k - 1);
      return;
    case NodeKind::Forall:
      target_at(b, at.child(0), PrenexKind::Pi, kind == PrenexKind::Pi ? k : k - 1);
      return;
    default:
      return;
  }
}

}  // namespace

Normalized to_prenex(const Formula& f) {
  TraceBuilder b(f);
  prenex_at(b, Occurrence{});
  Formula result = b.current();
  return {std::move(result), std::move(b).take()};
}

Normalized to_target(const Formula& f, PrenexKind kind, int k) {
  ClassFamily needed = kind == PrenexKind::Sigma ? ClassFamily::EPlus : ClassFamily::UPlus;
  ClassLabel label = classify(f);
  if (!in_class(label, needed, k)) {
    throw ClassPreconditionViolated(print(f) + " is in " + label.to_string() + ", not in " + to_string(needed) + "_" +
                                    std::to_string(k) + "; cannot reach " + to_string(kind) + "_" +
                                    std::to_string(k) + "^+");
  }
  TraceBuilder b(f);
  target_at(b, Occurrence{}, kind, k);
  Formula result = b.current();
  return {std::move(result), std::move(b).take()};
}

MinimalReport minimal_normalize(const Formula& f) {
  MinimalReport report{classify(f), std::nullopt, std::nullopt};
  int k = report.label.degree;
  switch (report.label.kind) {
    case ClassKind::F0:
      report.sigma = Normalized{f, Trace(f)};
      report.pi = Normalized{f, Trace(f)};
      break;
    case ClassKind::E:
      report.sigma = to_target(f, PrenexKind::Sigma, k);
      break;
    case ClassKind::U:
      report.pi = to_target(f, PrenexKind::Pi, k);
      break;
    case ClassKind::PF:
      report.sigma = to_target(f, PrenexKind::Sigma, k + 1);
      report.pi = to_target(f, PrenexKind::Pi, k + 1);
      break;
  }
  return report;
}

}  // namespace prenex
