#include "prenex/rewrite.hpp"

#include <array>

#include "prenex/error.hpp"
#include "prenex/syntax.hpp"

namespace prenex {

std::string Rule::tag() const {
  std::string t = "R" + std::to_string(static_cast<int>(kind));
  if (kind != RuleKind::R1 && kind != RuleKind::R2) {
    t += quantifier == Quantifier::Forall ? "-forall" : "-exists";
  }
  return t;
}

Rule Rule::from_tag(std::string_view tag, std::string target) {
  if (tag == "R1") return r1();
  if (tag == "R2") return r2();
  if (tag.size() > 3 && tag[0] == 'R' && tag[2] == '-' && tag[1] >= '3' && tag[1] <= '8') {
    auto q = tag.substr(3);
    if (q == "forall" || q == "exists") {
      Rule r{static_cast<RuleKind>(tag[1] - '0'), q == "forall" ? Quantifier::Forall : Quantifier::Exists, {}};
      if (r.kind == RuleKind::R8) {
        if (target.empty()) throw RuleNotApplicable("rule " + std::string(tag) + " needs a target variable");
        r.target = std::move(target);
      }
      return r;
    }
  }
  throw RuleNotApplicable("unknown rule tag '" + std::string(tag) + "'");
}

namespace {

bool fail(std::string* why, const std::string& reason) {
  if (why) *why = reason;
  return false;
}

// Matches `q` as "Q x ξ" with the rule's quantifier.
bool quantifier_matches(const Formula& q, Quantifier expected, std::string* why) {
  if (!q.is_quantifier()) return fail(why, "expected a quantifier");
  if (q.quantifier() != expected) return fail(why, "quantifier does not match the rule");
  return true;
}

bool side_condition(const Formula& q, const Formula& delta, std::string* why) {
  if (is_free_in(q.variable(), delta)) {
    return fail(why, "side condition violated: " + q.variable() + " is free in " + print(delta));
  }
  return true;
}

}  // namespace

std::optional<Formula> contract(const Formula& redex, const Rule& rule, std::string* why) {
  auto binary_of = [&](NodeKind k) {
    if (redex.kind() != k) return fail(why, "redex has the wrong connective");
    return true;
  };
  switch (rule.kind) {
    case RuleKind::R1:
    case RuleKind::R2: {
      Quantifier inner = rule.kind == RuleKind::R1 ? Quantifier::Exists : Quantifier::Forall;
      if (!binary_of(NodeKind::Implies)) return std::nullopt;
      const Formula& q = redex.left();
      const Formula& delta = redex.right();
      if (!quantifier_matches(q, inner, why) || !side_condition(q, delta, why)) return std::nullopt;
      return Formula::quantified(dual(inner), q.variable(), Formula::implies(q.body(), delta));
    }
    case RuleKind::R3: {
      if (!binary_of(NodeKind::Implies)) return std::nullopt;
      const Formula& delta = redex.left();
      const Formula& q = redex.right();
      if (!quantifier_matches(q, rule.quantifier, why) || !side_condition(q, delta, why)) return std::nullopt;
      return Formula::quantified(rule.quantifier, q.variable(), Formula::implies(delta, q.body()));
    }
    case RuleKind::R4:
    case RuleKind::R5:
    case RuleKind::R6:
    case RuleKind::R7: {
      NodeKind conn = (rule.kind == RuleKind::R4 || rule.kind == RuleKind::R5) ? NodeKind::And : NodeKind::Or;
      bool quantifier_left = rule.kind == RuleKind::R4 || rule.kind == RuleKind::R6;
      if (!binary_of(conn)) return std::nullopt;
      const Formula& q = quantifier_left ? redex.left() : redex.right();
      const Formula& delta = quantifier_left ? redex.right() : redex.left();
      if (!quantifier_matches(q, rule.quantifier, why) || !side_condition(q, delta, why)) return std::nullopt;
      Formula inner = quantifier_left ? Formula::binary(conn, q.body(), delta) : Formula::binary(conn, delta, q.body());
      return Formula::quantified(rule.quantifier, q.variable(), std::move(inner));
    }
    case RuleKind::R8: {
      if (!quantifier_matches(redex, rule.quantifier, why)) return std::nullopt;
      if (rule.target.empty()) {
        fail(why, "R8 needs a target variable");
        return std::nullopt;
      }
      if (variable_occurs(rule.target, redex.body())) {
        fail(why, "side condition violated: " + rule.target + " occurs in " + print(redex.body()));
        return std::nullopt;
      }
      return Formula::quantified(rule.quantifier, rule.target,
                                 rename_free(redex.body(), redex.variable(), rule.target));
    }
  }
  return std::nullopt;
}

namespace {

// A renamed binder must not collide with a constant of the same name, or the
// text form of the result would be ambiguous.
bool target_is_constant(const Formula& context, const Rule& rule) {
  return rule.kind == RuleKind::R8 && constant_names(context).count(rule.target) != 0;
}

const std::array<Rule, 12>& pull_rules() {
  static const std::array<Rule, 12> rules = {
      Rule::r1(),
      Rule::r2(),
      Rule::pull(RuleKind::R3, Quantifier::Forall),
      Rule::pull(RuleKind::R3, Quantifier::Exists),
      Rule::pull(RuleKind::R4, Quantifier::Forall),
      Rule::pull(RuleKind::R4, Quantifier::Exists),
      Rule::pull(RuleKind::R5, Quantifier::Forall),
      Rule::pull(RuleKind::R5, Quantifier::Exists),
      Rule::pull(RuleKind::R6, Quantifier::Forall),
      Rule::pull(RuleKind::R6, Quantifier::Exists),
      Rule::pull(RuleKind::R7, Quantifier::Forall),
      Rule::pull(RuleKind::R7, Quantifier::Exists),
  };
  return rules;
}

}  // namespace

std::vector<Application> applicable(const Formula& f, const Occurrence& o) {
  const Formula& sub = subformula_at(f, o);
  std::vector<Application> out;
  const auto& rules = pull_rules();
  for (const auto& rule : rules) {
    if (auto c = contract(sub, rule)) out.push_back({rule, replace_at(f, o, *c)});
  }
  if (sub.is_quantifier()) {
    auto avoid = variable_names(f);
    auto consts = constant_names(f);
    avoid.insert(consts.begin(), consts.end());
    Rule r = Rule::rename(sub.quantifier(), fresh_variable(avoid));
    if (auto c = contract(sub, r)) out.push_back({r, replace_at(f, o, *c)});
  }
  return out;
}

std::pair<Formula, RewriteStep> apply(const Formula& f, const Occurrence& o, const Rule& rule) {
  const Formula& sub = subformula_at(f, o);
  std::string why;
  auto c = contract(sub, rule, &why);
  if (!c) throw RuleNotApplicable(rule.tag() + " at " + o.to_string() + ": " + why);
  if (target_is_constant(f, rule)) {
    throw RuleNotApplicable(rule.tag() + " at " + o.to_string() + ": target " + rule.target + " is a constant");
  }
  Formula result = replace_at(f, o, *c);
  return {std::move(result), RewriteStep{o, rule, sub, *std::move(c)}};
}

namespace {

// True iff `renamed` is `original` with the free occurrences of `from`
// replaced by `to`, checked by walking both trees side by side.
bool is_renaming(const Formula& original, const Formula& renamed, const std::string& from, const std::string& to,
                 bool shadowed) {
  if (original.kind() != renamed.kind()) return false;
  switch (original.kind()) {
    case NodeKind::Bottom:
      return true;
    case NodeKind::Atom: {
      if (original.predicate() != renamed.predicate() || original.args().size() != renamed.args().size()) return false;
      for (std::size_t i = 0; i < original.args().size(); ++i) {
        const Term& a = original.args()[i];
        const Term& b = renamed.args()[i];
        bool substituted = !shadowed && a.is_variable() && a.name == from;
        if (substituted ? !(b.is_variable() && b.name == to) : !(a == b)) return false;
      }
      return true;
    }
    case NodeKind::Forall:
    case NodeKind::Exists:
      return original.variable() == renamed.variable() &&
             is_renaming(original.body(), renamed.body(), from, to, shadowed || original.variable() == from);
    default:
      return is_renaming(original.left(), renamed.left(), from, to, shadowed) &&
             is_renaming(original.right(), renamed.right(), from, to, shadowed);
  }
}

// Checks one row of the rule table against (before, after) without going
// through contract().
std::string check_row(const Formula& before, const Formula& after, const Rule& rule) {
  auto quant = [](NodeKind k) { return k == NodeKind::Forall || k == NodeKind::Exists; };
  auto kind_of = [](Quantifier q) { return q == Quantifier::Forall ? NodeKind::Forall : NodeKind::Exists; };
  if (rule.kind == RuleKind::R8) {
    if (before.kind() != kind_of(rule.quantifier) || after.kind() != before.kind()) {
      return "R8 relates two quantifiers of the rule's kind";
    }
    if (after.variable() != rule.target) return "R8 result binds " + after.variable() + ", not " + rule.target;
    if (variable_occurs(rule.target, before.body())) return "R8 target " + rule.target + " occurs in the body";
    if (!is_renaming(before.body(), after.body(), before.variable(), rule.target, false)) {
      return "R8 result is not the renamed body";
    }
    return {};
  }
  NodeKind conn = NodeKind::Implies;
  int q_side = 0;  // which child of `before` carries the quantifier
  NodeKind q_before = kind_of(rule.quantifier);
  NodeKind q_after = q_before;
  switch (rule.kind) {
    case RuleKind::R1:
      q_before = NodeKind::Exists;
      q_after = NodeKind::Forall;
      break;
    case RuleKind::R2:
      q_before = NodeKind::Forall;
      q_after = NodeKind::Exists;
      break;
    case RuleKind::R3:
      q_side = 1;
      break;
    case RuleKind::R4:
      conn = NodeKind::And;
      break;
    case RuleKind::R5:
      conn = NodeKind::And;
      q_side = 1;
      break;
    case RuleKind::R6:
      conn = NodeKind::Or;
      break;
    case RuleKind::R7:
      conn = NodeKind::Or;
      q_side = 1;
      break;
    default:
      break;
  }
  if (before.kind() != conn) return "redex connective does not match " + rule.tag();
  const Formula& q = before.child(q_side);
  const Formula& delta = before.child(1 - q_side);
  if (!quant(q.kind()) || q.kind() != q_before) return "redex quantifier does not match " + rule.tag();
  if (is_free_in(q.variable(), delta)) return q.variable() + " is free in " + print(delta);
  if (after.kind() != q_after || after.variable() != q.variable()) return "contractum prefix does not match";
  const Formula& inner = after.body();
  if (inner.kind() != conn) return "contractum connective does not match";
  if (!(inner.child(q_side) == q.body()) || !(inner.child(1 - q_side) == delta)) {
    return "contractum operands do not match the redex";
  }
  return {};
}

}  // namespace

StepCheck validate_step(const RewriteStep& step, const Formula& context) {
  const Formula* sub = nullptr;
  try {
    sub = &subformula_at(context, step.occurrence);
  } catch (const InvalidOccurrence& e) {
    return {false, e.what()};
  }
  if (!(*sub == step.before)) {
    return {false, "subformula at " + step.occurrence.to_string() + " is " + print(*sub) + ", step records " +
                       print(step.before)};
  }
  if (auto problem = check_row(step.before, step.after, step.rule); !problem.empty()) {
    return {false, step.rule.tag() + " at " + step.occurrence.to_string() + ": " + problem};
  }
  if (target_is_constant(context, step.rule)) return {false, "R8 target " + step.rule.target + " is a constant"};
  return {};
}

Formula replay(const Trace& t) {
  Formula cur = t.start;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    if (auto check = validate_step(s, cur); !check) throw TraceInvalid(i, check.detail);
    cur = replace_at(cur, s.occurrence, s.after);
  }
  if (!(cur == t.end)) {
    throw TraceInvalid(t.steps.size(), "replay ends in " + print(cur) + " but the trace records " + print(t.end));
  }
  return cur;
}

Trace concat(const Trace& first, const Trace& second) {
  if (!(first.end == second.start)) {
    throw TraceInvalid(first.steps.size(), "traces do not meet: " + print(first.end) + " vs " + print(second.start));
  }
  Trace out(first.start);
  out.steps = first.steps;
  out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
  out.end = second.end;
  return out;
}

void TraceBuilder::apply(const Occurrence& o, const Rule& rule) {
  auto [next, step] = prenex::apply(trace_.end, o, rule);
  trace_.steps.push_back(std::move(step));
  trace_.end = std::move(next);
}

std::string TraceBuilder::fresh() const {
  auto avoid = variable_names(trace_.end);
  auto consts = constant_names(trace_.end);
  avoid.insert(consts.begin(), consts.end());
  return fresh_variable(avoid);
}

}  // namespace prenex
