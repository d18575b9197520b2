#include "prenex/corpus.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <random>

#include "prenex/syntax.hpp"

namespace prenex {

namespace {

enum Token : std::uint8_t { kLeaf, kForall, kExists, kAnd, kOr, kImplies };

using Shape = std::vector<std::uint8_t>;

// Pre-order token strings of every tree with exactly q quantifiers and c
// connectives.
const std::vector<Shape>& shapes(int q, int c, std::map<std::pair<int, int>, std::vector<Shape>>& memo) {
  auto key = std::make_pair(q, c);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<Shape> out;
  if (q == 0 && c == 0) out.push_back({kLeaf});
  if (q > 0) {
    for (std::uint8_t quant : {kForall, kExists}) {
      for (const auto& body : shapes(q - 1, c, memo)) {
        Shape s{quant};
        s.insert(s.end(), body.begin(), body.end());
        out.push_back(std::move(s));
      }
    }
  }
  if (c > 0) {
    for (std::uint8_t conn : {kAnd, kOr, kImplies}) {
      for (int q1 = 0; q1 <= q; ++q1) {
        for (int c1 = 0; c1 < c; ++c1) {
          // Copies: the recursive calls may rehash the memo.
          auto lefts = shapes(q1, c1, memo);
          auto rights = shapes(q - q1, c - 1 - c1, memo);
          for (const auto& l : lefts) {
            for (const auto& r : rights) {
              Shape s{conn};
              s.insert(s.end(), l.begin(), l.end());
              s.insert(s.end(), r.begin(), r.end());
              out.push_back(std::move(s));
            }
          }
        }
      }
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

class Instantiator {
 public:
  explicit Instantiator(const Shape& s) : shape_(s) {}

  Formula build() {
    std::uint8_t t = shape_[pos_++];
    switch (t) {
      case kLeaf: {
        int i = leaf_++;
        if (scope_.empty()) return i % 2 == 0 ? Formula::atom("R") : Formula::bottom();
        const auto& var = scope_[static_cast<std::size_t>(i) % scope_.size()];
        return Formula::atom(i % 2 == 0 ? "P" : "Q", {Term::var(var)});
      }
      case kForall:
      case kExists: {
        static const char* names[] = {"x", "y", "z", "w", "v", "s", "t"};
        std::string var = binder_ < 7 ? names[binder_] : "x" + std::to_string(binder_);
        ++binder_;
        scope_.push_back(var);
        Formula body = build();
        scope_.pop_back();
        return Formula::quantified(t == kForall ? Quantifier::Forall : Quantifier::Exists, var, body);
      }
      default: {
        Formula l = build();
        Formula r = build();
        NodeKind k = t == kAnd ? NodeKind::And : t == kOr ? NodeKind::Or : NodeKind::Implies;
        return Formula::binary(k, l, r);
      }
    }
  }

 private:
  const Shape& shape_;
  std::size_t pos_ = 0;
  int leaf_ = 0;
  int binder_ = 0;
  std::vector<std::string> scope_;
};

class RandomBuilder {
 public:
  explicit RandomBuilder(const RandomCorpusOptions& o) : o_(o), rng_(o.seed) {
    for (const auto& [name, arity] : o.signature.predicates()) predicates_.emplace_back(name, arity);
  }

  Formula next() {
    std::size_t nodes = 1 + pick(o_.max_nodes);
    return build(nodes);
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Formula build(std::size_t nodes) {
    if (nodes == 1) return leaf();
    bool quantify = nodes == 2 || pick(4) == 0;
    if (quantify) {
      const auto& var = o_.binders[pick(o_.binders.size())];
      Quantifier q = pick(2) == 0 ? Quantifier::Forall : Quantifier::Exists;
      scope_.push_back(var);
      Formula body = build(nodes - 1);
      scope_.pop_back();
      return Formula::quantified(q, var, body);
    }
    static constexpr NodeKind kinds[] = {NodeKind::And, NodeKind::Or, NodeKind::Implies};
    NodeKind k = kinds[pick(3)];
    std::size_t left = 1 + pick(nodes - 2);
    Formula l = build(left);
    Formula r = build(nodes - 1 - left);
    return Formula::binary(k, l, r);
  }

  Formula leaf() {
    std::size_t choice = pick(predicates_.size() + 1);
    if (choice == predicates_.size()) return Formula::bottom();
    const auto& [name, arity] = predicates_[choice];
    std::vector<std::string> pool;
    for (const auto& v : scope_) {
      if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);
    }
    pool.insert(pool.end(), o_.free_variables.begin(), o_.free_variables.end());
    std::size_t variables = pool.size();
    pool.insert(pool.end(), o_.signature.constants().begin(), o_.signature.constants().end());
    std::vector<Term> args;
    for (int a = 0; a < arity; ++a) {
      std::size_t i = pick(pool.size());
      args.push_back(i < variables ? Term::var(pool[i]) : Term::constant(pool[i]));
    }
    return Formula::atom(name, std::move(args));
  }

  const RandomCorpusOptions& o_;
  std::mt19937_64 rng_;
  std::vector<std::pair<std::string, int>> predicates_;
  std::vector<std::string> scope_;
};

}  // namespace

Signature default_signature() {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_predicate("Q", 1);
  sig.add_predicate("R", 0);
  return sig;
}

std::vector<Formula> exhaustive_corpus(int max_quantifiers, int max_connectives) {
  std::map<std::pair<int, int>, std::vector<Shape>> memo;
  std::vector<Formula> out;
  for (int c = 0; c <= max_connectives; ++c) {
    for (int q = 0; q <= max_quantifiers; ++q) {
      for (const auto& s : shapes(q, c, memo)) out.push_back(Instantiator(s).build());
    }
  }
  return out;
}

std::vector<Formula> random_corpus(const RandomCorpusOptions& options) {
  if (options.max_nodes == 0) throw Error("max_nodes must be positive");
  if (options.binders.empty()) throw Error("at least one binder name is needed");
  RandomBuilder b(options);
  std::vector<Formula> out;
  out.reserve(options.count);
  for (std::size_t i = 0; i < options.count; ++i) out.push_back(b.next());
  return out;
}

std::vector<Formula> default_corpus() {
  auto out = exhaustive_corpus();
  auto extra = random_corpus();
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  out << "# signature: " << print_signature(corpus.signature) << "\n";
  for (const auto& f : corpus.formulas) out << print(f) << "\n";
}

Corpus read_corpus(std::istream& in, const std::optional<Signature>& fallback) {
  static constexpr std::string_view header = "# signature:";
  Corpus corpus;
  std::optional<Signature> sig = fallback;
  if (sig) corpus.signature = *sig;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    view.remove_prefix(first);
    if (view.substr(0, header.size()) == header) {
      sig = parse_signature(view.substr(header.size()));
      corpus.signature = *sig;
      continue;
    }
    if (view.front() == '#') continue;
    try {
      Formula f = parse(view, ParseOptions{sig, false});
      if (!sig) corpus.signature.merge(Signature::of(f));
      corpus.formulas.push_back(std::move(f));
    } catch (const ParseError& e) {
      throw ParseError(e.offset(), number, e.column() + first, e.expected(), e.found());
    }
  }
  return corpus;
}

}  // namespace prenex
