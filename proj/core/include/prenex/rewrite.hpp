#pragma once

// The eight directed prenex transformation rules, applied at an addressed
// occurrence, and traces of such applications.
//
//   R1     ∃x ξ → δ   ⇝  ∀x (ξ → δ)        x ∉ FV(δ)
//   R2     ∀x ξ → δ   ⇝  ∃x (ξ → δ)        x ∉ FV(δ)
//   R3-Q   δ → Qx ξ   ⇝  Qx (δ → ξ)        x ∉ FV(δ)
//   R4-Q   Qx ξ ∧ δ   ⇝  Qx (ξ ∧ δ)        x ∉ FV(δ)
//   R5-Q   δ ∧ Qx ξ   ⇝  Qx (δ ∧ ξ)        x ∉ FV(δ)
//   R6-Q   Qx ξ ∨ δ   ⇝  Qx (ξ ∨ δ)        x ∉ FV(δ)
//   R7-Q   δ ∨ Qx ξ   ⇝  Qx (δ ∨ ξ)        x ∉ FV(δ)
//   R8-Q   Qx ξ(x)    ⇝  Qy ξ(y)           y does not occur in ξ at all
//
// Rules only ever apply left to right.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prenex/formula.hpp"

namespace prenex {

enum class RuleKind : std::uint8_t { R1 = 1, R2, R3, R4, R5, R6, R7, R8 };

struct Rule {
  RuleKind kind = RuleKind::R1;
  /// The rule's Q; unused for R1 and R2.
  Quantifier quantifier = Quantifier::Forall;
  /// New bound variable for R8.
  std::string target;

  static Rule r1() { return {RuleKind::R1, Quantifier::Exists, {}}; }
  static Rule r2() { return {RuleKind::R2, Quantifier::Forall, {}}; }
  static Rule pull(RuleKind kind, Quantifier q) { return {kind, q, {}}; }
  static Rule rename(Quantifier q, std::string target) { return {RuleKind::R8, q, std::move(target)}; }

  /// "R1", "R2", "R3-forall", ..., "R8-exists".
  std::string tag() const;
  /// Inverse of tag(); throws RuleNotApplicable on unknown tags.
  static Rule from_tag(std::string_view tag, std::string target = {});

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct RewriteStep {
  Occurrence occurrence;
  Rule rule;
  Formula before;  // redex at `occurrence`
  Formula after;   // contractum
};

struct Trace {
  Formula start;
  std::vector<RewriteStep> steps;
  Formula end;

  explicit Trace(Formula f) : start(f), end(std::move(f)) {}
};

/// The contractum of `redex` under `rule`, or nullopt with the reason in `why`.
std::optional<Formula> contract(const Formula& redex, const Rule& rule, std::string* why = nullptr);

struct Application {
  Rule rule;
  Formula result;  // the whole rewritten formula
};

/// Every rule instance applicable at `o`. R8 is offered once, with a
/// variable fresh for the whole formula. Throws InvalidOccurrence.
std::vector<Application> applicable(const Formula& f, const Occurrence& o);

/// Throws RuleNotApplicable or InvalidOccurrence.
std::pair<Formula, RewriteStep> apply(const Formula& f, const Occurrence& o, const Rule& rule);

struct StepCheck {
  bool ok = true;
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// Independent check of a recorded step against the formula it was applied to.
StepCheck validate_step(const RewriteStep& step, const Formula& context);

/// Replays and validates every step; throws TraceInvalid at the first failure
/// (index == steps.size() when only the end formula disagrees).
Formula replay(const Trace& t);

/// Transitivity: `first.end` must equal `second.start`.
Trace concat(const Trace& first, const Trace& second);

/// Applies `rule` at `o` and records the step.
class TraceBuilder {
 public:
  explicit TraceBuilder(Formula start) : trace_(std::move(start)) {}

  const Formula& current() const { return trace_.end; }
  const Formula& at(const Occurrence& o) const { return subformula_at(trace_.end, o); }
  void apply(const Occurrence& o, const Rule& rule);
  /// A `_f<i>` variable that occurs nowhere in the current formula.
  std::string fresh() const;

  Trace take() && { return std::move(trace_); }
  const Trace& trace() const { return trace_; }

 private:
  Trace trace_;
};

}  // namespace prenex
