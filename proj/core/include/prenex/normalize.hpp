#pragma once

// Constructive prenex normalization. Every normalizer returns its result
// together with a trace of single rule applications that replays from the
// input.

#include <optional>

#include "prenex/formula.hpp"
#include "prenex/hierarchy.hpp"
#include "prenex/rewrite.hpp"

namespace prenex {

struct Normalized {
  Formula result;
  Trace trace;
};

/// Full prenexing. For φ₀ ∘ φ₁ the operand holding quantifiers (the left one
/// first) is prenexed, its leading binder renamed fresh and pulled out, and
/// the remaining body is processed the same way.
Normalized to_prenex(const Formula& f);

/// Prenexes into Σ_k^+ (kind Sigma) or Π_k^+ (kind Pi). Requires the formula
/// to be in E_k^+ respectively U_k^+; otherwise throws
/// ClassPreconditionViolated naming its actual class.
Normalized to_target(const Formula& f, PrenexKind kind, int k);

struct MinimalReport {
  ClassLabel label;
  std::optional<Normalized> sigma;
  std::optional<Normalized> pi;
};

/// Witnesses for the formula's exact class: Σ_k for E_k, Π_k for U_k, both
/// Σ_{k+1} and Π_{k+1} for PF_k, the formula itself for F_0.
MinimalReport minimal_normalize(const Formula& f);

}  // namespace prenex
