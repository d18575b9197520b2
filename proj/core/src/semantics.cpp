#include "prenex/semantics.hpp"

#include <cstdint>

#include "prenex/error.hpp"

namespace prenex {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Formula flattened for repeated evaluation. Slots: free variables, then
// constants, then one slot per binder.
struct Program {
  struct Op {
    NodeKind kind;
    int left = -1;
    int right = -1;
    int slot = -1;
    int predicate = -1;
    std::vector<int> args;
  };
  std::vector<Op> ops;
  int root = -1;
  int slots = 0;
};

class Compiler {
 public:
  explicit Compiler(const Vocabulary& v) : v_(v) {
    int i = 0;
    for (const auto& [name, arity] : v.predicates) predicate_index_[name] = i++;
    program_.slots = static_cast<int>(v.variables.size() + v.constants.size());
  }

  Program run(const Formula& f) {
    program_.root = compile(f);
    return std::move(program_);
  }

 private:
  int compile(const Formula& f) {
    Program::Op op;
    op.kind = f.kind();
    switch (f.kind()) {
      case NodeKind::Bottom:
        break;
      case NodeKind::Atom: {
        auto it = predicate_index_.find(f.predicate());
        if (it == predicate_index_.end()) throw UncoveredSymbol("no interpretation for predicate " + f.predicate());
        op.predicate = it->second;
        for (const auto& t : f.args()) op.args.push_back(slot_of(t));
        break;
      }
      case NodeKind::Forall:
      case NodeKind::Exists: {
        op.slot = program_.slots++;
        scope_.emplace_back(f.variable(), op.slot);
        op.left = compile(f.body());
        scope_.pop_back();
        break;
      }
      default:
        op.left = compile(f.left());
        op.right = compile(f.right());
    }
    program_.ops.push_back(std::move(op));
    return static_cast<int>(program_.ops.size()) - 1;
  }

  int slot_of(const Term& t) const {
    if (t.is_variable()) {
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
        if (it->first == t.name) return it->second;
      }
      auto pos = v_.variables.find(t.name);
      if (pos == v_.variables.end()) throw UncoveredSymbol("no value for free variable " + t.name);
      return static_cast<int>(std::distance(v_.variables.begin(), pos));
    }
    auto pos = v_.constants.find(t.name);
    if (pos == v_.constants.end()) throw UncoveredSymbol("no value for constant " + t.name);
    return static_cast<int>(v_.variables.size() + std::distance(v_.constants.begin(), pos));
  }

  const Vocabulary& v_;
  std::map<std::string, int> predicate_index_;
  std::vector<std::pair<std::string, int>> scope_;
  Program program_;
};

// One point of the interpretation space: predicate tables as bit masks.
struct RawInterpretation {
  int n = 1;
  std::vector<std::uint64_t> tables;
  std::vector<int> arities;
  std::vector<int> env;  // free variables, constants, then binder slots
};

bool eval(const Program& p, int op_index, RawInterpretation& r) {
  const auto& op = p.ops[static_cast<std::size_t>(op_index)];
  switch (op.kind) {
    case NodeKind::Bottom:
      return false;
    case NodeKind::Atom: {
      std::uint64_t index = 0;
      std::uint64_t scale = 1;
      for (int slot : op.args) {
        index += scale * static_cast<std::uint64_t>(r.env[static_cast<std::size_t>(slot)]);
        scale *= static_cast<std::uint64_t>(r.n);
      }
      return (r.tables[static_cast<std::size_t>(op.predicate)] >> index) & 1U;
    }
    case NodeKind::And:
      return eval(p, op.left, r) && eval(p, op.right, r);
    case NodeKind::Or:
      return eval(p, op.left, r) || eval(p, op.right, r);
    case NodeKind::Implies:
      return !eval(p, op.left, r) || eval(p, op.right, r);
    case NodeKind::Forall:
    case NodeKind::Exists: {
      bool universal = op.kind == NodeKind::Forall;
      auto& slot = r.env[static_cast<std::size_t>(op.slot)];
      for (int d = 0; d < r.n; ++d) {
        slot = d;
        if (eval(p, op.left, r) != universal) return !universal;
      }
      return universal;
    }
  }
  return false;
}

// Odometer over tables, then constants, then free variables.
class Enumerator {
 public:
  Enumerator(const Vocabulary& v, int n) : v_(v) {
    raw_.n = n;
    for (const auto& [name, arity] : v.predicates) {
      std::size_t bits = ipow(static_cast<std::size_t>(n), arity);
      if (bits >= 64) throw Error("predicate " + name + " has too many tuples to enumerate");
      raw_.arities.push_back(arity);
      limits_.push_back(std::uint64_t{1} << bits);
      raw_.tables.push_back(0);
    }
    raw_.env.assign(v.variables.size() + v.constants.size(), 0);
  }

  RawInterpretation& current() { return raw_; }

  bool advance() {
    for (std::size_t i = 0; i < raw_.tables.size(); ++i) {
      if (++raw_.tables[i] < limits_[i]) return true;
      raw_.tables[i] = 0;
    }
    std::size_t fixed = v_.variables.size() + v_.constants.size();
    // Constants are enumerated before free variables.
    for (std::size_t k = 0; k < fixed; ++k) {
      std::size_t i = (k + v_.variables.size()) % fixed;
      if (++raw_.env[i] < raw_.n) return true;
      raw_.env[i] = 0;
    }
    return false;
  }

  Interpretation materialize() const {
    Interpretation out;
    out.domain_size = raw_.n;
    std::size_t i = 0;
    for (const auto& [name, arity] : v_.predicates) {
      std::size_t bits = ipow(static_cast<std::size_t>(raw_.n), arity);
      std::vector<bool> table(bits);
      for (std::size_t b = 0; b < bits; ++b) table[b] = (raw_.tables[i] >> b) & 1U;
      out.predicates.emplace(name, std::move(table));
      ++i;
    }
    std::size_t slot = 0;
    for (const auto& name : v_.variables) out.variables[name] = raw_.env[slot++];
    for (const auto& name : v_.constants) out.constants[name] = raw_.env[slot++];
    return out;
  }

 private:
  const Vocabulary& v_;
  RawInterpretation raw_;
  std::vector<std::uint64_t> limits_;
};

}  // namespace

std::string Interpretation::to_string() const {
  std::string out = "domain {";
  for (int d = 0; d < domain_size; ++d) out += (d ? "," : "") + std::to_string(d);
  out += "}";
  for (const auto& [name, table] : predicates) {
    out += "; " + name + " = ";
    std::size_t bits = table.size();
    if (bits == 1) {
      out += table[0] ? "true" : "false";
      continue;
    }
    // Recover the arity from the table size.
    int arity = 0;
    for (std::size_t s = 1; s < bits; s *= static_cast<std::size_t>(domain_size)) ++arity;
    out += "{";
    bool first = true;
    for (std::size_t b = 0; b < bits; ++b) {
      if (!table[b]) continue;
      if (!first) out += ",";
      first = false;
      if (arity == 1) {
        out += std::to_string(b);
      } else {
        out += "(";
        std::size_t rest = b;
        for (int a = 0; a < arity; ++a) {
          out += (a ? "," : "") + std::to_string(rest % static_cast<std::size_t>(domain_size));
          rest /= static_cast<std::size_t>(domain_size);
        }
        out += ")";
      }
    }
    out += "}";
  }
  for (const auto& [name, value] : constants) out += "; " + name + " = " + std::to_string(value);
  for (const auto& [name, value] : variables) out += "; " + name + " = " + std::to_string(value);
  return out;
}

bool evaluate(const Formula& f, const Interpretation& i) {
  Vocabulary v = Vocabulary::of(f);
  RawInterpretation raw;
  raw.n = i.domain_size;
  for (const auto& [name, arity] : v.predicates) {
    auto it = i.predicates.find(name);
    if (it == i.predicates.end()) throw UncoveredSymbol("no interpretation for predicate " + name);
    std::size_t bits = ipow(static_cast<std::size_t>(i.domain_size), arity);
    if (it->second.size() != bits || bits > 64) {
      throw UncoveredSymbol("table of " + name + " does not cover " + std::to_string(bits) + " tuples");
    }
    std::uint64_t mask = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (it->second[b]) mask |= std::uint64_t{1} << b;
    }
    raw.tables.push_back(mask);
    raw.arities.push_back(arity);
  }
  for (const auto& name : v.variables) {
    auto it = i.variables.find(name);
    if (it == i.variables.end()) throw UncoveredSymbol("no value for free variable " + name);
    raw.env.push_back(it->second);
  }
  for (const auto& name : v.constants) {
    auto it = i.constants.find(name);
    if (it == i.constants.end()) throw UncoveredSymbol("no value for constant " + name);
    raw.env.push_back(it->second);
  }
  for (int value : raw.env) {
    if (value < 0 || value >= i.domain_size) throw UncoveredSymbol("value outside the domain");
  }
  Program p = Compiler(v).run(f);
  raw.env.resize(static_cast<std::size_t>(p.slots), 0);
  return eval(p, p.root, raw);
}

Vocabulary Vocabulary::of(const Formula& f) {
  Vocabulary v;
  Signature sig = Signature::of(f);
  v.predicates = sig.predicates();
  v.constants = sig.constants();
  v.variables = free_vars(f);
  return v;
}

void Vocabulary::merge(const Vocabulary& other) {
  for (const auto& [name, arity] : other.predicates) {
    auto [it, inserted] = predicates.emplace(name, arity);
    if (!inserted && it->second != arity) throw ArityMismatch("predicate " + name + " used with two arities");
  }
  constants.insert(other.constants.begin(), other.constants.end());
  variables.insert(other.variables.begin(), other.variables.end());
}

std::size_t interpretation_count(const Vocabulary& v, int max_domain) {
  std::size_t total = 0;
  for (int n = 1; n <= max_domain; ++n) {
    std::size_t count = 1;
    for (const auto& [name, arity] : v.predicates) count <<= ipow(static_cast<std::size_t>(n), arity);
    count *= ipow(static_cast<std::size_t>(n), static_cast<int>(v.constants.size() + v.variables.size()));
    total += count;
  }
  return total;
}

void for_each_interpretation(const Vocabulary& v, int max_domain,
                             const std::function<bool(const Interpretation&)>& visit) {
  for (int n = 1; n <= max_domain; ++n) {
    Enumerator e(v, n);
    do {
      if (!visit(e.materialize())) return;
    } while (e.advance());
  }
}

std::vector<bool> truth_vector(const Formula& f, const Vocabulary& v, int max_domain) {
  Program p = Compiler(v).run(f);
  std::vector<bool> out;
  out.reserve(interpretation_count(v, max_domain));
  for (int n = 1; n <= max_domain; ++n) {
    Enumerator e(v, n);
    e.current().env.resize(static_cast<std::size_t>(p.slots), 0);
    do {
      out.push_back(eval(p, p.root, e.current()));
    } while (e.advance());
  }
  return out;
}

EquivalenceResult semantically_equivalent(const Formula& a, const Formula& b, int max_domain) {
  Vocabulary v = Vocabulary::of(a);
  v.merge(Vocabulary::of(b));
  Program pa = Compiler(v).run(a);
  Program pb = Compiler(v).run(b);
  EquivalenceResult result;
  for (int n = 1; n <= max_domain; ++n) {
    Enumerator e(v, n);
    std::size_t slots = static_cast<std::size_t>(std::max(pa.slots, pb.slots));
    e.current().env.resize(slots, 0);
    do {
      ++result.interpretations;
      if (eval(pa, pa.root, e.current()) != eval(pb, pb.root, e.current())) {
        result.equivalent = false;
        result.counterexample = e.materialize();
        return result;
      }
    } while (e.advance());
  }
  return result;
}

}  // namespace prenex
