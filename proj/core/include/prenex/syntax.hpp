#pragma once

// Text format for formulas.
//
//   formula := iff
//   iff     := impl { "<->" impl }
//   impl    := or [ "->" impl ]                      right-associative
//   or      := and { "|" and }
//   and     := unary { "&" unary }
//   unary   := "~" unary | ("forall" | "exists") var+ "." formula
//            | "(" formula ")" | atom
//   atom    := ident [ "(" term { "," term } ")" ] | "false"
//
// Quantifier bodies extend as far right as possible. Unicode input aliases:
// ∀ ∃ ∧ ∨ → ↔ ¬ ⊥. Negation and the biconditional are desugared on input.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prenex/error.hpp"
#include "prenex/formula.hpp"

namespace prenex {

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::size_t line, std::size_t column, std::string expected, std::string found);

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
  std::string found_;
};

/// Input-level syntax tree: like Formula, plus negation and biconditional.
struct SurfaceFormula {
  enum class Kind { Atom, Bottom, Not, And, Or, Implies, Iff, Forall, Exists };

  Kind kind = Kind::Bottom;
  std::string name;  // predicate or bound variable
  std::vector<Term> args;
  std::vector<SurfaceFormula> children;
};

/// ¬φ becomes φ → ⊥ and φ ↔ ψ becomes (φ → ψ) ∧ (ψ → φ), bottom-up.
Formula desugar(const SurfaceFormula& f);

struct ParseOptions {
  /// Without a signature, predicate arities are inferred and every unbound
  /// identifier in argument position is a constant. With one, unbound
  /// identifiers not declared as constants are free variables.
  std::optional<Signature> signature;
  /// Accept `_b<i>` / `_f<i>` names. Only for machine-written files.
  bool allow_reserved = false;
};

Formula parse(std::string_view text, const ParseOptions& options = {});

/// Minimal-parentheses rendering; parse(print(f)) == f.
std::string print(const Formula& f);

/// "P/1, Q/1, R/0, c": `Name/arity` declares a predicate, a bare name a
/// constant. Commas and whitespace separate entries, '#' starts a comment.
Signature parse_signature(std::string_view text);
std::string print_signature(const Signature& sig);

}  // namespace prenex
