#pragma once

// Formula corpora for theorem checking, and the corpus file format: one
// formula per line, '#' comments, blank lines ignored. A line of the form
// "# signature: P/1, Q/1, R/0" fixes the signature for the lines after it.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prenex/formula.hpp"

namespace prenex {

/// {P/1, Q/1, R/0}.
Signature default_signature();

/// One formula per shape with at most `max_quantifiers` quantifiers and
/// `max_connectives` binary connectives. Binders are x, y, z, ... in pre-order
/// and each leaf is fixed by its position: under a binder, leaf i is P (i even)
/// or Q (i odd) applied to the (i mod depth)-th enclosing binder; elsewhere it
/// alternates R and false.
std::vector<Formula> exhaustive_corpus(int max_quantifiers = 3, int max_connectives = 3);

struct RandomCorpusOptions {
  std::size_t count = 10000;
  /// Bound on node_count(), atoms included.
  std::size_t max_nodes = 8;
  std::uint64_t seed = 20240601;
  Signature signature = default_signature();
  /// Variables that appear unbound.
  std::vector<std::string> free_variables{"u"};
  std::vector<std::string> binders{"x", "y", "z"};
};

/// Deterministic for given options.
std::vector<Formula> random_corpus(const RandomCorpusOptions& options = {});

/// Exhaustive corpus followed by the default random corpus.
std::vector<Formula> default_corpus();

struct Corpus {
  Signature signature;
  std::vector<Formula> formulas;
};

void write_corpus(std::ostream& out, const Corpus& corpus);
/// Lines before any signature header use `fallback` when given, otherwise
/// the parser infers each line's signature. Throws ParseError with the line
/// number in the message.
Corpus read_corpus(std::istream& in, const std::optional<Signature>& fallback = std::nullopt);

}  // namespace prenex
