#include "prenex/oracle.hpp"

#include <deque>
#include <ostream>
#include <stdexcept>

#include "prenex/error.hpp"
#include "prenex/syntax.hpp"

namespace prenex {

namespace {

Rule pull_rule(NodeKind conn, int side, Quantifier q) {
  if (conn == NodeKind::Implies) {
    if (side == 1) return Rule::pull(RuleKind::R3, q);
    return q == Quantifier::Exists ? Rule::r1() : Rule::r2();
  }
  if (conn == NodeKind::And) return Rule::pull(side == 0 ? RuleKind::R4 : RuleKind::R5, q);
  return Rule::pull(side == 0 ? RuleKind::R6 : RuleKind::R7, q);
}

// Operand that holds the pulled quantifier.
int pulled_side(RuleKind kind) {
  switch (kind) {
    case RuleKind::R3:
    case RuleKind::R5:
    case RuleKind::R7:
      return 1;
    default:
      return 0;
  }
}

std::set<std::string> names_to_avoid(const Formula& f) {
  auto avoid = variable_names(f);
  auto constants = constant_names(f);
  avoid.insert(constants.begin(), constants.end());
  return avoid;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

ClassMask class_bit(const PrenexClass& c) {
  if (c.index == 0) return 1;
  if (c.index > 31) throw std::out_of_range("prenex class index too large");
  int bit = 2 * c.index - (c.kind == PrenexKind::Sigma ? 1 : 0);
  return ClassMask{1} << bit;
}

std::vector<PrenexClass> mask_classes(ClassMask mask) {
  std::vector<PrenexClass> out;
  if (mask & 1) out.push_back({PrenexKind::Sigma, 0});
  for (int bit = 1; bit < 64; ++bit) {
    if (!((mask >> bit) & 1)) continue;
    int index = (bit + 1) / 2;
    out.push_back({bit % 2 == 1 ? PrenexKind::Sigma : PrenexKind::Pi, index});
  }
  return out;
}

bool mask_meets_plus(ClassMask mask, PrenexKind kind, int k) {
  for (const auto& c : mask_classes(mask)) {
    if (in_prenex_class_plus(c, kind, k)) return true;
  }
  return false;
}

bool mask_meets_exact(ClassMask mask, PrenexKind kind, int k) {
  for (const auto& c : mask_classes(mask)) {
    if (c.is(kind, k)) return true;
  }
  return false;
}

std::size_t RewriteGraph::add(const Formula& f) {
  std::size_t size = f.quantifier_count() + f.connective_count();
  if (size > options_.max_size) {
    throw SizeBoundExceeded("formula has " + std::to_string(size) + " quantifiers and connectives, bound is " +
                            std::to_string(options_.max_size));
  }
  Formula canonical = alpha_canonical(f);
  auto [it, inserted] = index_.emplace(canonical, states_.size());
  if (inserted) {
    State s{canonical, pull_measure(canonical), false, std::nullopt, {}};
    states_.push_back(std::move(s));
  }
  return it->second;
}

const std::vector<RewriteGraph::Edge>& RewriteGraph::successors(std::size_t id) {
  if (states_[id].expanded) return states_[id].edges;
  const Formula f = states_[id].formula;
  const std::size_t measure = states_[id].measure;
  std::vector<Edge> edges;
  for (const auto& o : occurrences(f)) {
    const Formula& redex = subformula_at(f, o);
    if (!redex.is_binary()) continue;
    for (int side = 0; side < 2; ++side) {
      const Formula& operand = redex.child(static_cast<std::size_t>(side));
      if (!operand.is_quantifier()) continue;
      Rule rule = pull_rule(redex.kind(), side, operand.quantifier());
      auto contracted = contract(redex, rule);
      if (!contracted) {
        // Side condition failed: rename the binder apart first.
        auto renamed = contract(operand, Rule::rename(operand.quantifier(), fresh_variable(names_to_avoid(f))));
        Formula fixed = Formula::binary(redex.kind(), side == 0 ? *renamed : redex.left(),
                                        side == 0 ? redex.right() : *renamed);
        contracted = contract(fixed, rule);
        if (!contracted) throw std::logic_error("pull failed after renaming at " + o.to_string());
      }
      std::size_t to = add(replace_at(f, o, *contracted));
      if (states_[to].measure + 1 != measure) {
        throw std::logic_error("pull measure did not drop by one: " + print(f) + " to " + print(states_[to].formula));
      }
      edges.push_back(Edge{to, o, rule});
    }
  }
  edge_count_ += edges.size();
  states_[id].edges = std::move(edges);
  states_[id].expanded = true;
  return states_[id].edges;
}

std::vector<std::size_t> RewriteGraph::closure(std::size_t id) {
  std::vector<std::size_t> order{id};
  std::vector<bool> seen(states_.size(), false);
  seen[id] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& e : successors(order[i])) {
      if (e.to >= seen.size()) seen.resize(states_.size(), false);
      if (!seen[e.to]) {
        seen[e.to] = true;
        order.push_back(e.to);
      }
    }
  }
  return order;
}

ClassMask RewriteGraph::reachable_classes(std::size_t id) {
  if (states_[id].classes) return *states_[id].classes;
  ClassMask mask = 0;
  if (auto c = prenex_class(states_[id].formula)) mask |= class_bit(*c);
  // Copy: recursion may grow states_ and invalidate references.
  std::vector<std::size_t> next;
  for (const auto& e : successors(id)) next.push_back(e.to);
  for (std::size_t to : next) mask |= reachable_classes(to);
  states_[id].classes = mask;
  return mask;
}

std::optional<std::vector<RewriteGraph::Edge>> RewriteGraph::path(std::size_t from, std::size_t to) {
  std::unordered_map<std::size_t, std::pair<std::size_t, Edge>> parent;
  std::deque<std::size_t> queue{from};
  std::vector<bool> seen(states_.size(), false);
  seen[from] = true;
  while (!queue.empty() && !seen[to]) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const auto& e : successors(cur)) {
      if (e.to >= seen.size()) seen.resize(states_.size(), false);
      if (seen[e.to]) continue;
      seen[e.to] = true;
      parent.emplace(e.to, std::make_pair(cur, e));
      queue.push_back(e.to);
    }
    if (to >= seen.size()) seen.resize(states_.size(), false);
  }
  if (to >= seen.size() || !seen[to]) return std::nullopt;
  std::vector<Edge> edges;
  for (std::size_t cur = to; cur != from;) {
    const auto& [prev, edge] = parent.at(cur);
    edges.push_back(edge);
    cur = prev;
  }
  return std::vector<Edge>(edges.rbegin(), edges.rend());
}

void RewriteGraph::write_dot(std::ostream& out, std::size_t root) {
  auto ids = closure(root);
  out << "digraph rewrites {\n  node [shape=box];\n";
  for (std::size_t id : ids) {
    const Formula& f = states_[id].formula;
    out << "  s" << id << " [label=\"" << escape(print(f)) << "\\n" << classify(f).to_string() << "\"";
    if (is_prenex(f)) out << ", style=bold";
    out << "];\n";
  }
  for (std::size_t id : ids) {
    for (const auto& e : successors(id)) {
      out << "  s" << id << " -> s" << e.to << " [label=\"" << e.rule.tag() << " " << e.occurrence.to_string()
          << "\"];\n";
    }
  }
  out << "}\n";
}

ReachabilityReport reachable(const Formula& f, const OracleOptions& options) {
  RewriteGraph graph(options);
  std::size_t root = graph.add(f);
  ReachabilityReport report;
  for (std::size_t id : graph.closure(root)) {
    ++report.explored;
    report.edges += graph.successors(id).size();
    if (auto c = prenex_class(graph.state(id))) {
      report.prenex.push_back(graph.state(id));
      report.classes |= class_bit(*c);
    }
  }
  report.max_k = degree(f) + 1;
  for (int k = 0; k <= report.max_k; ++k) {
    report.sigma_plus.push_back(report.reaches_plus(PrenexKind::Sigma, k));
    report.pi_plus.push_back(report.reaches_plus(PrenexKind::Pi, k));
    report.sigma_exact.push_back(report.reaches_exact(PrenexKind::Sigma, k));
    report.pi_exact.push_back(report.reaches_exact(PrenexKind::Pi, k));
  }
  for (const auto& c : mask_classes(report.classes)) {
    if (c.index == 0 || c.kind == PrenexKind::Sigma) {
      if (!report.min_sigma) report.min_sigma = c.index;
    }
    if (c.index == 0 || c.kind == PrenexKind::Pi) {
      if (!report.min_pi) report.min_pi = c.index;
    }
  }
  return report;
}

Trace expand_path(const Formula& start, const std::vector<RewriteGraph::Edge>& edges) {
  TraceBuilder b(start);
  for (const auto& e : edges) {
    if (!contract(b.at(e.occurrence), e.rule)) {
      Occurrence binder = e.occurrence.child(pulled_side(e.rule.kind));
      b.apply(binder, Rule::rename(b.at(binder).quantifier(), b.fresh()));
    }
    b.apply(e.occurrence, e.rule);
  }
  return std::move(b).take();
}

std::optional<Trace> witness(const Formula& f, PrenexKind kind, int k, const OracleOptions& options) {
  RewriteGraph graph(options);
  std::size_t root = graph.add(f);
  for (std::size_t id : graph.closure(root)) {
    auto c = prenex_class(graph.state(id));
    if (!c || !in_prenex_class_plus(*c, kind, k)) continue;
    auto edges = graph.path(root, id);
    return expand_path(f, *edges);
  }
  return std::nullopt;
}

}  // namespace prenex
