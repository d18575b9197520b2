#pragma once

// Exhaustive search of the rewrite relation modulo alpha-equivalence.
//
// States are alpha-canonical formulas. An edge is one application of R1–R7 at
// some occurrence; when a side condition fails the binder is first renamed
// fresh, which R8 permits, so R8 itself never appears as an edge. Each edge
// lowers pull_measure by exactly one, so the graph is a finite DAG.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "prenex/formula.hpp"
#include "prenex/hierarchy.hpp"
#include "prenex/rewrite.hpp"

namespace prenex {

struct OracleOptions {
  /// Upper bound on quantifiers + connectives of the searched formula.
  std::size_t max_size = 8;
};

/// Set of prenex classes as bits: bit 0 is the quantifier-free class, bit
/// 2n-1 is Σ_n and bit 2n is Π_n.
using ClassMask = std::uint64_t;

ClassMask class_bit(const PrenexClass& c);
/// Some class in `mask` lies in Σ_k^+ (Sigma) or Π_k^+ (Pi).
bool mask_meets_plus(ClassMask mask, PrenexKind kind, int k);
/// Some class in `mask` is exactly Σ_k / Π_k; k = 0 means quantifier-free.
bool mask_meets_exact(ClassMask mask, PrenexKind kind, int k);
std::vector<PrenexClass> mask_classes(ClassMask mask);

struct ReachabilityReport {
  std::size_t explored = 0;
  std::size_t edges = 0;
  /// Reachable prenex formulas, canonical, in breadth-first discovery order.
  std::vector<Formula> prenex;
  ClassMask classes = 0;
  std::optional<int> min_sigma;
  std::optional<int> min_pi;
  /// Flags below cover k = 0..max_k, where max_k = degree + 1.
  int max_k = 0;
  std::vector<bool> sigma_plus;
  std::vector<bool> pi_plus;
  std::vector<bool> sigma_exact;
  std::vector<bool> pi_exact;

  bool reaches_plus(PrenexKind kind, int k) const { return mask_meets_plus(classes, kind, k); }
  bool reaches_exact(PrenexKind kind, int k) const { return mask_meets_exact(classes, kind, k); }
};

/// Canonical states and their successors, expanded on demand. One graph may
/// serve many queries; states reached from different roots are shared.
class RewriteGraph {
 public:
  struct Edge {
    std::size_t to;
    Occurrence occurrence;
    Rule rule;  // R1–R7
  };

  explicit RewriteGraph(OracleOptions options = {}) : options_(options) {}

  /// Canonicalizes `f` and returns its state id. Throws SizeBoundExceeded.
  std::size_t add(const Formula& f);
  const Formula& state(std::size_t id) const { return states_[id].formula; }
  std::size_t size() const { return states_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::vector<Edge>& successors(std::size_t id);
  /// Every state reachable from `id`, including itself, in breadth-first order.
  std::vector<std::size_t> closure(std::size_t id);
  /// Prenex classes reachable from `id`; memoized.
  ClassMask reachable_classes(std::size_t id);

  /// Shortest edge path from `from` to `to`; nullopt when unreachable.
  std::optional<std::vector<Edge>> path(std::size_t from, std::size_t to);

  /// Graphviz rendering of the closure of `root`.
  void write_dot(std::ostream& out, std::size_t root);

 private:
  struct State {
    Formula formula;
    std::size_t measure;
    bool expanded = false;
    std::optional<ClassMask> classes;
    std::vector<Edge> edges;
  };

  OracleOptions options_;
  std::vector<State> states_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
  std::size_t edge_count_ = 0;
};

/// Breadth-first closure of `f` under R1–R7 modulo alpha.
ReachabilityReport reachable(const Formula& f, const OracleOptions& options = {});

/// Expands edges found on canonical states into literal steps starting at
/// `start`, inserting an R8 rename wherever a side condition fails on the
/// literal formula.
Trace expand_path(const Formula& start, const std::vector<RewriteGraph::Edge>& edges);

/// A literal trace from `f` to some reachable prenex formula in Σ_k^+ (Sigma)
/// or Π_k^+ (Pi), shortest among those the search finds; nullopt if none.
std::optional<Trace> witness(const Formula& f, PrenexKind kind, int k, const OracleOptions& options = {});

}  // namespace prenex
