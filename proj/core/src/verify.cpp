#include "prenex/verify.hpp"

#include <chrono>
#include <memory>
#include <unordered_set>

#include "prenex/error.hpp"
#include "prenex/hierarchy.hpp"
#include "prenex/normalize.hpp"
#include "prenex/semantics.hpp"
#include "prenex/syntax.hpp"
#include "prenex/trace_io.hpp"

namespace prenex {

namespace {

constexpr std::pair<Suite, std::string_view> kNames[] = {
    {Suite::Normalization, "normalization"},     {Suite::MainTheorem, "main-theorem"},
    {Suite::MT1, "mt1"},                         {Suite::Reflection, "reflection"},
    {Suite::ClassicalEquiv, "classical-equiv"},  {Suite::Partition, "partition"},
    {Suite::CrossClassifier, "cross-classifier"}, {Suite::RoundTrip, "round-trip"},
};

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}

  template <class Describe>
  void check(bool ok, Describe&& describe) {
    ++r_.checks;
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = describe();
  }

  void fail(const std::string& what) {
    check(false, [&] { return what; });
  }

 private:
  SuiteResult& r_;
};

// Rewrite graph shared across corpus formulas, with per-state caches. It is
// dropped and rebuilt when it grows past the configured limit.
class Explorer {
 public:
  explicit Explorer(const VerifyOptions& o) : o_(o) { reset(); }

  std::size_t root(const Formula& f) {
    if (graph_->size() > o_.graph_limit) reset();
    return graph_->add(f);
  }

  RewriteGraph& graph() { return *graph_; }

  /// Calls visit(from, edge) once for every edge in the closure of `root`
  /// that no earlier call has visited since the last reset.
  template <class Visit>
  void new_edges(std::size_t root, Visit&& visit) {
    auto ids = graph_->closure(root);
    // Size every cache up front so references handed out stay valid.
    expanded_.resize(graph_->size(), false);
    labels_.resize(graph_->size());
    truth_.resize(graph_->size());
    for (std::size_t id : ids) {
      if (expanded_[id]) continue;
      expanded_[id] = true;
      for (const auto& e : graph_->successors(id)) visit(id, e);
    }
  }

  const ClassLabel& label(std::size_t id) {
    auto& slot = labels_[id];
    if (!slot) slot = classify(graph_->state(id));
    return *slot;
  }

  const std::vector<bool>& truth(std::size_t id) {
    auto& slot = truth_[id];
    if (!slot) {
      const Formula& f = graph_->state(id);
      slot = truth_vector(f, Vocabulary::of(f), o_.max_domain);
    }
    return *slot;
  }

 private:
  void reset() {
    graph_ = std::make_unique<RewriteGraph>(o_.oracle);
    expanded_.clear();
    labels_.clear();
    truth_.clear();
  }

  const VerifyOptions& o_;
  std::unique_ptr<RewriteGraph> graph_;
  std::vector<bool> expanded_;
  std::vector<std::optional<ClassLabel>> labels_;
  std::vector<std::optional<std::vector<bool>>> truth_;
};

std::string describe(const Formula& f) { return print(f); }

template <class Body>
void for_each_formula(const std::vector<Formula>& corpus, SuiteResult& r, Recorder& rec, Body&& body) {
  for (const auto& f : corpus) {
    ++r.items;
    try {
      body(f);
    } catch (const std::exception& e) {
      rec.fail(describe(f) + ": " + e.what());
    }
  }
}

void normalization(const std::vector<Formula>& corpus, const VerifyOptions& o, SuiteResult& r) {
  Recorder rec(r);
  for_each_formula(corpus, r, rec, [&](const Formula& f) {
    auto [result, trace] = to_prenex(f);
    rec.check(is_prenex(result), [&] { return describe(f) + ": result " + print(result) + " is not prenex"; });
    rec.check(trace.start == f && trace.end == result, [&] { return describe(f) + ": trace endpoints differ"; });
    Formula replayed = replay(trace);
    rec.check(replayed == result, [&] { return describe(f) + ": replay disagrees"; });
    rec.check(free_vars(result) == free_vars(f), [&] { return describe(f) + ": free variables changed"; });
    rec.check(result.quantifier_count() == f.quantifier_count(),
              [&] { return describe(f) + ": quantifier count changed"; });
    rec.check(result.connective_count() == f.connective_count(),
              [&] { return describe(f) + ": connective count changed"; });
    auto eq = semantically_equivalent(f, result, o.max_domain);
    rec.check(eq.equivalent, [&] {
      return describe(f) + ": not equivalent to " + print(result) + " on " + eq.counterexample->to_string();
    });
  });
}

void main_theorem(const std::vector<Formula>& corpus, const VerifyOptions& o, SuiteResult& r) {
  Recorder rec(r);
  Explorer ex(o);
  for_each_formula(corpus, r, rec, [&](const Formula& f) {
    std::size_t root = ex.root(f);
    ClassMask mask = ex.graph().reachable_classes(root);
    ClassLabel label = classify(f);
    auto sp = [&](int k) { return mask_meets_plus(mask, PrenexKind::Sigma, k); };
    auto pp = [&](int k) { return mask_meets_plus(mask, PrenexKind::Pi, k); };
    auto se = [&](int k) { return mask_meets_exact(mask, PrenexKind::Sigma, k); };
    auto pe = [&](int k) { return mask_meets_exact(mask, PrenexKind::Pi, k); };
    auto clause = [&](int number, int k, bool lhs, bool rhs) {
      rec.check(lhs == rhs, [&] {
        return describe(f) + " (" + label.to_string() + "): clause " + std::to_string(number) + " fails at k=" +
               std::to_string(k);
      });
    };
    for (int k = 0; k <= label.degree + 1; ++k) {
      clause(1, k, in_class(label, ClassFamily::EPlus, k), sp(k));
      clause(2, k, in_class(label, ClassFamily::UPlus, k), pp(k));
      clause(3, k, in_class(label, ClassFamily::FPlus, k), sp(k + 1) && pp(k + 1));
      clause(4, k, in_class(label, ClassFamily::E, k + 1), sp(k + 1) && !pp(k + 1));
      clause(4, k, in_class(label, ClassFamily::E, k + 1), se(k + 1) && !pp(k + 1));
      clause(5, k, in_class(label, ClassFamily::U, k + 1), pp(k + 1) && !sp(k + 1));
      clause(5, k, in_class(label, ClassFamily::U, k + 1), pe(k + 1) && !sp(k + 1));
      clause(6, k, in_class(label, ClassFamily::PF, k), sp(k + 1) && pp(k + 1) && !sp(k) && !pp(k));
      clause(6, k, in_class(label, ClassFamily::PF, k), se(k + 1) && pe(k + 1) && !sp(k) && !pp(k));
    }

    // Witnesses of the normalizer are among the oracle's prenex forms and
    // have exactly the class the label predicts.
    auto closure = ex.graph().closure(root);
    std::unordered_set<std::size_t> reached(closure.begin(), closure.end());
    auto report = minimal_normalize(f);
    auto expect = [&](const std::optional<Normalized>& w, PrenexKind kind, int index) {
      rec.check(w.has_value(), [&] { return describe(f) + ": missing " + to_string(kind) + " witness"; });
      if (!w) return;
      auto c = prenex_class(w->result);
      rec.check(c && c->is(kind, index), [&] {
        return describe(f) + ": witness " + print(w->result) + " is not " + to_string(kind) + "_" +
               std::to_string(index);
      });
      rec.check(reached.count(ex.root(w->result)) != 0,
                [&] { return describe(f) + ": witness " + print(w->result) + " not found by the oracle"; });
    };
    int k = label.degree;
    switch (label.kind) {
      case ClassKind::F0:
        expect(report.sigma, PrenexKind::Sigma, 0);
        expect(report.pi, PrenexKind::Pi, 0);
        break;
      case ClassKind::E:
        expect(report.sigma, PrenexKind::Sigma, k);
        rec.check(!report.pi, [&] { return describe(f) + ": unexpected Pi witness"; });
        break;
      case ClassKind::U:
        expect(report.pi, PrenexKind::Pi, k);
        rec.check(!report.sigma, [&] { return describe(f) + ": unexpected Sigma witness"; });
        break;
      case ClassKind::PF:
        expect(report.sigma, PrenexKind::Sigma, k + 1);
        expect(report.pi, PrenexKind::Pi, k + 1);
        break;
    }
  });
}

void mt1(const std::vector<Formula>& corpus, SuiteResult& r) {
  Recorder rec(r);
  for_each_formula(corpus, r, rec, [&](const Formula& f) {
    ClassLabel label = classify(f);
    for (int k = 0; k <= label.degree + 1; ++k) {
      for (PrenexKind kind : {PrenexKind::Sigma, PrenexKind::Pi}) {
        auto family = kind == PrenexKind::Sigma ? ClassFamily::EPlus : ClassFamily::UPlus;
        auto where = [&] { return describe(f) + " at " + to_string(kind) + "_" + std::to_string(k) + "^+"; };
        if (!in_class(label, family, k)) {
          bool refused = false;
          try {
            to_target(f, kind, k);
          } catch (const ClassPreconditionViolated&) {
            refused = true;
          }
          rec.check(refused, [&] { return where() + ": accepted a formula outside the class"; });
          continue;
        }
        auto [result, trace] = to_target(f, kind, k);
        rec.check(is_prenex(result) && in_prenex_class_plus(result, kind, k),
                  [&] { return where() + ": result " + print(result) + " misses the class"; });
        rec.check(replay(trace) == result, [&] { return where() + ": trace does not replay"; });
      }
    }
  });
}

void reflection(const std::vector<Formula>& corpus, const VerifyOptions& o, SuiteResult& r) {
  Recorder rec(r);
  Explorer ex(o);
  for (const auto& f : corpus) {
    try {
      ex.new_edges(ex.root(f), [&](std::size_t from, const RewriteGraph::Edge& e) {
        ++r.items;
        const ClassLabel before = ex.label(from);
        const ClassLabel& after = ex.label(e.to);
        for (int k = 0; k <= before.degree + 1; ++k) {
          for (auto family : {ClassFamily::EPlus, ClassFamily::UPlus}) {
            rec.check(!in_class(after, family, k) || in_class(before, family, k), [&] {
              return print(ex.graph().state(from)) + " => " + print(ex.graph().state(e.to)) + " leaves " +
                     to_string(family) + "_" + std::to_string(k);
            });
          }
        }
      });
    } catch (const std::exception& e) {
      rec.fail(describe(f) + ": " + e.what());
    }
  }
}

void classical_equiv(const std::vector<Formula>& corpus, const VerifyOptions& o, SuiteResult& r) {
  Recorder rec(r);
  Explorer ex(o);
  for (const auto& f : corpus) {
    try {
      ex.new_edges(ex.root(f), [&](std::size_t from, const RewriteGraph::Edge& e) {
        ++r.items;
        const Formula& a = ex.graph().state(from);
        const Formula& b = ex.graph().state(e.to);
        bool same_vocabulary = Vocabulary::of(a) == Vocabulary::of(b);
        bool ok = same_vocabulary ? ex.truth(from) == ex.truth(e.to) : semantically_equivalent(a, b, o.max_domain).equivalent;
        rec.check(ok, [&] {
          auto eq = semantically_equivalent(a, b, o.max_domain);
          return print(a) + " => " + print(b) + " (" + e.rule.tag() + ") differs on " +
                 (eq.counterexample ? eq.counterexample->to_string() : std::string("an interpretation"));
        });
      });
    } catch (const std::exception& e) {
      rec.fail(describe(f) + ": " + e.what());
    }
  }
}

void partition(const std::vector<Formula>& corpus, SuiteResult& r) {
  Recorder rec(r);
  auto prenex_inclusions = [&](const Formula& p) {
    auto c = prenex_class(p);
    if (!c) return;
    ClassLabel label = classify(p);
    for (int k = 0; k <= c->index + 1; ++k) {
      for (PrenexKind kind : {PrenexKind::Sigma, PrenexKind::Pi}) {
        auto family = kind == PrenexKind::Sigma ? ClassFamily::EPlus : ClassFamily::UPlus;
        auto exact = kind == PrenexKind::Sigma ? ClassFamily::E : ClassFamily::U;
        if (k > 0 && c->is(kind, k)) {
          rec.check(in_class(label, exact, k), [&] {
            return print(p) + " is " + c->to_string() + " but not in " + to_string(exact) + "_" + std::to_string(k);
          });
        }
        if (in_prenex_class_plus(*c, kind, k)) {
          rec.check(in_class(label, family, k), [&] {
            return print(p) + " is in " + to_string(kind) + "_" + std::to_string(k) + "^+ but not in " +
                   to_string(family) + "_" + std::to_string(k);
          });
        }
      }
    }
  };
  for_each_formula(corpus, r, rec, [&](const Formula& f) {
    ClassLabel label = classify(f);
    auto in = [&](ClassFamily fam, int k) { return in_class(label, fam, k); };
    rec.check(!in(ClassFamily::PF, 0), [&] { return describe(f) + " is in PF_0"; });
    if (f.has_quantifier()) {
      int d = label.degree;
      int count = int{in(ClassFamily::E, d)} + int{in(ClassFamily::U, d)} + int{in(ClassFamily::PF, d)};
      rec.check(d >= 1 && count == 1, [&] { return describe(f) + " is not in exactly one of E, U, PF"; });
    } else {
      rec.check(label.degree == 0 && label.kind == ClassKind::F0,
                [&] { return describe(f) + ": quantifier-free formula outside F_0"; });
    }
    for (int k = 0; k <= label.degree + 1; ++k) {
      rec.check(!(in(ClassFamily::E, k + 1) && in(ClassFamily::UPlus, k + 1)),
                [&] { return describe(f) + ": E_k+1 meets U_k+1^+ at k=" + std::to_string(k); });
      rec.check(!(in(ClassFamily::U, k + 1) && in(ClassFamily::EPlus, k + 1)),
                [&] { return describe(f) + ": U_k+1 meets E_k+1^+ at k=" + std::to_string(k); });
      bool f_plus = in(ClassFamily::FPlus, k);
      rec.check(f_plus == (in(ClassFamily::EPlus, k + 1) && in(ClassFamily::UPlus, k + 1)),
                [&] { return describe(f) + ": F_k^+ differs from E_k+1^+ & U_k+1^+ at k=" + std::to_string(k); });
      rec.check(f_plus == (in(ClassFamily::PF, k) || in(ClassFamily::EPlus, k) || in(ClassFamily::UPlus, k)),
                [&] { return describe(f) + ": F_k^+ differs from PF_k | E_k^+ | U_k^+ at k=" + std::to_string(k); });
    }
    prenex_inclusions(f);
    prenex_inclusions(to_prenex(f).result);
  });
}

void cross_classifier(const std::vector<Formula>& corpus, SuiteResult& r) {
  Recorder rec(r);
  for_each_formula(corpus, r, rec, [&](const Formula& f) {
    for (const auto& o : occurrences(f)) {
      const Formula& g = subformula_at(f, o);
      ClassLabel label = classify(g);
      auto record = classify_compositional(g);
      for (int k = 0; k <= label.degree + 1; ++k) {
        rec.check(record.in_e_plus(k) == in_class(label, ClassFamily::EPlus, k) &&
                      record.in_u_plus(k) == in_class(label, ClassFamily::UPlus, k),
                  [&] { return print(g) + ": compositional classifier disagrees at k=" + std::to_string(k); });
      }
      // The closure rules, checked directly on alternation-path classes.
      auto E = [](const Formula& h, int k) { return in_class(h, ClassFamily::EPlus, k); };
      auto U = [](const Formula& h, int k) { return in_class(h, ClassFamily::UPlus, k); };
      auto rule = [&](int number, int k, bool lhs, bool rhs) {
        rec.check(lhs == rhs, [&] {
          return print(g) + ": closure rule " + std::to_string(number) + " fails at k=" + std::to_string(k);
        });
      };
      for (int k = 0; k <= label.degree + 1; ++k) {
        switch (g.kind()) {
          case NodeKind::And:
          case NodeKind::Or:
            rule(1, k, U(g, k), U(g.left(), k) && U(g.right(), k));
            rule(1, k, E(g, k), E(g.left(), k) && E(g.right(), k));
            break;
          case NodeKind::Implies:
            rule(3, k, U(g, k), E(g.left(), k) && U(g.right(), k));
            rule(3, k, E(g, k), U(g.left(), k) && E(g.right(), k));
            break;
          case NodeKind::Forall:
            // At k = 0 a quantified formula is in neither class.
            if (k >= 1) rule(4, k, U(g, k), U(g.body(), k));
            rule(6, k, E(g, k + 1), U(g, k));
            break;
          case NodeKind::Exists:
            if (k >= 1) rule(5, k, E(g, k), E(g.body(), k));
            rule(7, k, U(g, k + 1), E(g, k));
            break;
          default:
            break;
        }
      }
    }
  });
}

struct Verdict {
  bool valid = true;
  std::size_t index = 0;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Verdict verdict_of(const Trace& t) {
  try {
    replay(t);
    return {};
  } catch (const TraceInvalid& e) {
    return {false, e.index()};
  }
}

Verdict verdict_of_text(const std::string& text) {
  try {
    return verdict_of(read_trace(text));
  } catch (const TraceInvalid& e) {
    return {false, e.index()};
  }
}

Rule corrupted(const Rule& rule) {
  Rule out = rule;
  switch (rule.kind) {
    case RuleKind::R1:
      return Rule::r2();
    case RuleKind::R2:
      return Rule::r1();
    default:
      out.quantifier = dual(rule.quantifier);
      return out;
  }
}

void round_trip(const std::vector<Formula>& corpus, SuiteResult& r) {
  Recorder rec(r);
  for_each_formula(corpus, r, rec, [&](const Formula& f) {
    Signature sig = Signature::of(f);
    Formula back = parse(print(f), ParseOptions{sig, false});
    rec.check(back == f, [&] { return describe(f) + ": parse(print) gives " + print(back); });

    Trace t = to_prenex(f).trace;
    std::string text = write_trace(t);
    Trace loaded = read_trace(text);
    rec.check(verdict_of(t) == verdict_of(loaded) && loaded.end == t.end,
              [&] { return describe(f) + ": trace file does not replay like the trace"; });
    rec.check(write_trace(loaded) == text, [&] { return describe(f) + ": trace file is not stable"; });
    if (t.steps.empty()) return;

    Trace bad_step = t;
    std::size_t m = t.steps.size() / 2;
    bad_step.steps[m].rule = corrupted(t.steps[m].rule);
    Verdict expected{false, m};
    rec.check(verdict_of(bad_step) == expected && verdict_of_text(write_trace(bad_step)) == expected,
              [&] { return describe(f) + ": corrupted step " + std::to_string(m) + " verdicts differ"; });

    Trace bad_end = t;
    bad_end.end = t.start;
    Verdict end_expected{false, t.steps.size()};
    rec.check(verdict_of(bad_end) == end_expected && verdict_of_text(write_trace(bad_end)) == end_expected,
              [&] { return describe(f) + ": wrong end formula verdicts differ"; });
  });
}

}  // namespace

std::string_view suite_name(Suite s) {
  for (const auto& [suite, name] : kNames) {
    if (suite == s) return name;
  }
  return "unknown";
}

std::optional<Suite> suite_from_name(std::string_view name) {
  for (const auto& [suite, n] : kNames) {
    if (n == name) return suite;
  }
  return std::nullopt;
}

std::vector<Suite> all_suites() {
  std::vector<Suite> out;
  for (const auto& [suite, name] : kNames) out.push_back(suite);
  return out;
}

SuiteResult run_suite(Suite suite, const std::vector<Formula>& corpus, const VerifyOptions& options) {
  SuiteResult r;
  r.suite = suite;
  auto started = std::chrono::steady_clock::now();
  switch (suite) {
    case Suite::Normalization:
      normalization(corpus, options, r);
      break;
    case Suite::MainTheorem:
      main_theorem(corpus, options, r);
      break;
    case Suite::MT1:
      mt1(corpus, r);
      break;
    case Suite::Reflection:
      reflection(corpus, options, r);
      break;
    case Suite::ClassicalEquiv:
      classical_equiv(corpus, options, r);
      break;
    case Suite::Partition:
      partition(corpus, r);
      break;
    case Suite::CrossClassifier:
      cross_classifier(corpus, r);
      break;
    case Suite::RoundTrip:
      round_trip(corpus, r);
      break;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

}  // namespace prenex
