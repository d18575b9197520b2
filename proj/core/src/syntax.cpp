#include "prenex/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace prenex {

ParseError::ParseError(std::size_t offset, std::size_t line, std::size_t column, std::string expected,
                       std::string found)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected + ", found " + found),
      offset_(offset),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Formula desugar(const SurfaceFormula& f) {
  using K = SurfaceFormula::Kind;
  switch (f.kind) {
    case K::Atom:
      return Formula::atom(f.name, f.args);
    case K::Bottom:
      return Formula::bottom();
    case K::Not:
      return Formula::implies(desugar(f.children[0]), Formula::bottom());
    case K::And:
      return Formula::conj(desugar(f.children[0]), desugar(f.children[1]));
    case K::Or:
      return Formula::disj(desugar(f.children[0]), desugar(f.children[1]));
    case K::Implies:
      return Formula::implies(desugar(f.children[0]), desugar(f.children[1]));
    case K::Iff: {
      Formula a = desugar(f.children[0]);
      Formula b = desugar(f.children[1]);
      return Formula::conj(Formula::implies(a, b), Formula::implies(b, a));
    }
    case K::Forall:
      return Formula::forall(f.name, desugar(f.children[0]));
    case K::Exists:
      return Formula::exists(f.name, desugar(f.children[0]));
  }
  return Formula::bottom();
}

namespace {

enum class Tok { Ident, Forall, Exists, False, Not, And, Or, Implies, Iff, LParen, RParen, Comma, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Ident:
      return "identifier '" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

struct Alias {
  std::string_view spelling;
  Tok kind;
};

// Longest spellings first so "<->" wins over "<".
constexpr Alias kSymbols[] = {
    {"<->", Tok::Iff},        {"->", Tok::Implies},        {"↔", Tok::Iff},     {"→", Tok::Implies},
    {"∀", Tok::Forall},  {"∃", Tok::Exists},     {"∧", Tok::And},     {"∨", Tok::Or},
    {"¬", Tok::Not},     {"⊥", Tok::False},      {"~", Tok::Not},          {"&", Tok::And},
    {"|", Tok::Or},           {"(", Tok::LParen},          {")", Tok::RParen},       {",", Tok::Comma},
    {".", Tok::Dot},
};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) { lex(); }

  Formula run() {
    SurfaceFormula tree = formula();
    if (peek().kind != Tok::End) fail("end of input");
    resolve(tree);
    return desugar(tree);
  }

 private:
  std::pair<std::size_t, std::size_t> line_col(std::size_t offset) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail_at(std::size_t offset, const std::string& expected, const std::string& found) const {
    auto [line, col] = line_col(offset);
    throw ParseError(offset, line, col, expected, found);
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    fail_at(t.offset, expected, describe(t));
  }

  std::string where(std::size_t offset) const {
    auto [line, col] = line_col(offset);
    return std::to_string(line) + ":" + std::to_string(col) + ": ";
  }

  void lex() {
    std::size_t i = 0;
    while (i < text_.size()) {
      unsigned char c = static_cast<unsigned char>(text_[i]);
      if (std::isspace(c)) {
        ++i;
        continue;
      }
      if (std::isalpha(c) || c == '_') {
        std::size_t j = i + 1;
        while (j < text_.size()) {
          unsigned char d = static_cast<unsigned char>(text_[j]);
          if (!(std::isalnum(d) || d == '_' || d == '\'')) break;
          ++j;
        }
        std::string word(text_.substr(i, j - i));
        Tok kind = Tok::Ident;
        if (word == "forall") kind = Tok::Forall;
        else if (word == "exists") kind = Tok::Exists;
        else if (word == "false") kind = Tok::False;
        tokens_.push_back({kind, std::move(word), i});
        i = j;
        continue;
      }
      bool matched = false;
      for (const auto& a : kSymbols) {
        if (text_.substr(i, a.spelling.size()) == a.spelling) {
          tokens_.push_back({a.kind, std::string(a.spelling), i});
          i += a.spelling.size();
          matched = true;
          break;
        }
      }
      if (!matched) {
        std::size_t len = 1;
        if (c >= 0xC0) {
          while (i + len < text_.size() && (static_cast<unsigned char>(text_[i + len]) & 0xC0) == 0x80) ++len;
        }
        fail_at(i, "a formula token", "'" + std::string(text_.substr(i, len)) + "'");
      }
    }
    tokens_.push_back({Tok::End, "", text_.size()});
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(what);
    return next();
  }

  static SurfaceFormula node(SurfaceFormula::Kind k, SurfaceFormula a, SurfaceFormula b) {
    SurfaceFormula n;
    n.kind = k;
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return n;
  }

  SurfaceFormula formula() { return iff(); }

  SurfaceFormula iff() {
    SurfaceFormula lhs = impl();
    while (accept(Tok::Iff)) lhs = node(SurfaceFormula::Kind::Iff, std::move(lhs), impl());
    return lhs;
  }

  SurfaceFormula impl() {
    SurfaceFormula lhs = disj();
    if (accept(Tok::Implies)) return node(SurfaceFormula::Kind::Implies, std::move(lhs), impl());
    return lhs;
  }

  SurfaceFormula disj() {
    SurfaceFormula lhs = conj();
    while (accept(Tok::Or)) lhs = node(SurfaceFormula::Kind::Or, std::move(lhs), conj());
    return lhs;
  }

  SurfaceFormula conj() {
    SurfaceFormula lhs = unary();
    while (accept(Tok::And)) lhs = node(SurfaceFormula::Kind::And, std::move(lhs), unary());
    return lhs;
  }

  void check_name(const Token& t) const {
    if (!options_.allow_reserved && is_reserved_name(t.text)) {
      throw ReservedName(where(t.offset) + "'" + t.text + "' is in a reserved namespace");
    }
  }

  SurfaceFormula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: {
        next();
        SurfaceFormula n;
        n.kind = SurfaceFormula::Kind::Not;
        n.children.push_back(unary());
        return n;
      }
      case Tok::Forall:
      case Tok::Exists: {
        auto kind = t.kind == Tok::Forall ? SurfaceFormula::Kind::Forall : SurfaceFormula::Kind::Exists;
        next();
        std::vector<Token> vars;
        vars.push_back(expect(Tok::Ident, "a variable"));
        while (peek().kind == Tok::Ident) vars.push_back(next());
        expect(Tok::Dot, "'.' or a variable");
        for (const auto& v : vars) {
          check_name(v);
          binders_.push_back(v.text);
          bound_names_.emplace(v.text, v.offset);
        }
        SurfaceFormula body = formula();
        binders_.resize(binders_.size() - vars.size());
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
          SurfaceFormula q;
          q.kind = kind;
          q.name = it->text;
          q.children.push_back(std::move(body));
          body = std::move(q);
        }
        return body;
      }
      case Tok::LParen: {
        next();
        SurfaceFormula inner = formula();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::False:
        next();
        return SurfaceFormula{};
      case Tok::Ident:
        return atom();
      default:
        fail("a formula");
    }
  }

  SurfaceFormula atom() {
    const Token& name = next();
    check_name(name);
    SurfaceFormula a;
    a.kind = SurfaceFormula::Kind::Atom;
    a.name = name.text;
    if (accept(Tok::LParen)) {
      do {
        const Token& arg = expect(Tok::Ident, "a term");
        check_name(arg);
        bool bound = std::find(binders_.begin(), binders_.end(), arg.text) != binders_.end();
        // Unbound identifiers are provisionally constants; resolve() decides.
        a.args.push_back(bound ? Term::var(arg.text) : Term::constant(arg.text));
        if (!bound) unbound_names_.emplace(arg.text, arg.offset);
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "',' or ')'");
    }
    atom_offsets_.push_back(name.offset);
    return a;
  }

  void resolve(SurfaceFormula& tree) {
    Signature sig;
    if (options_.signature) {
      sig = *options_.signature;
      for (const auto& [name, offset] : bound_names_) {
        if (sig.has_constant(name) || sig.has_predicate(name)) {
          throw SignatureError(where(offset) + "'" + name + "' is declared in the signature and cannot be bound");
        }
      }
    } else {
      for (const auto& [name, offset] : unbound_names_) {
        if (bound_names_.count(name)) {
          throw SignatureError(where(offset) + "'" + name +
                               "' is used both as a bound variable and as a constant; declare a signature to make "
                               "it a free variable");
        }
      }
    }
    std::size_t atom_index = 0;
    resolve_rec(tree, sig, atom_index);
  }

  void resolve_rec(SurfaceFormula& f, Signature& sig, std::size_t& atom_index) {
    if (f.kind == SurfaceFormula::Kind::Atom) {
      std::size_t offset = atom_offsets_[atom_index++];
      int arity = static_cast<int>(f.args.size());
      if (options_.signature) {
        int declared = sig.arity(f.name);
        if (declared < 0) throw SignatureError(where(offset) + "undeclared predicate '" + f.name + "'");
        if (declared != arity) {
          throw ArityMismatch(where(offset) + "predicate '" + f.name + "' has arity " + std::to_string(declared) +
                              " but is applied to " + std::to_string(arity) + " argument(s)");
        }
        for (auto& t : f.args) {
          if (t.is_variable()) continue;
          if (sig.has_predicate(t.name)) {
            throw SignatureError(where(offset) + "predicate '" + t.name + "' used as a term");
          }
          if (!sig.has_constant(t.name)) t.kind = Term::Kind::Variable;
        }
      } else {
        int known = sig.arity(f.name);
        if (known >= 0 && known != arity) {
          throw ArityMismatch(where(offset) + "predicate '" + f.name + "' used with arity " + std::to_string(arity) +
                              " and " + std::to_string(known));
        }
        try {
          sig.add_predicate(f.name, arity);
          for (const auto& t : f.args) {
            if (!t.is_variable()) sig.add_constant(t.name);
          }
        } catch (const SignatureError& e) {
          throw SignatureError(where(offset) + e.what());
        }
      }
      return;
    }
    for (auto& c : f.children) resolve_rec(c, sig, atom_index);
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> binders_;
  std::multimap<std::string, std::size_t> bound_names_;
  std::multimap<std::string, std::size_t> unbound_names_;
  std::vector<std::size_t> atom_offsets_;
};

// Precedence levels; quantifiers have none and only need parentheses when
// something follows them.
constexpr int kImpl = 2;
constexpr int kOr = 3;
constexpr int kAnd = 4;
constexpr int kAtom = 6;

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Implies:
      return kImpl;
    case NodeKind::Or:
      return kOr;
    case NodeKind::And:
      return kAnd;
    default:
      return kAtom;
  }
}

void print_rec(const Formula& f, int min_prec, bool rightmost, std::string& out) {
  switch (f.kind()) {
    case NodeKind::Bottom:
      out += "false";
      return;
    case NodeKind::Atom:
      out += f.predicate();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          out += f.args()[i].name;
        }
        out += ')';
      }
      return;
    case NodeKind::Forall:
    case NodeKind::Exists: {
      if (!rightmost) out += '(';
      out += f.kind() == NodeKind::Forall ? "forall" : "exists";
      const Formula* cur = &f;
      while (cur->kind() == f.kind()) {
        out += ' ';
        out += cur->variable();
        cur = &cur->body();
      }
      out += ". ";
      print_rec(*cur, 0, true, out);
      if (!rightmost) out += ')';
      return;
    }
    default: {
      int p = precedence(f.kind());
      bool parens = p < min_prec;
      bool inner_rightmost = parens || rightmost;
      if (parens) out += '(';
      int left_min = f.kind() == NodeKind::Implies ? kOr : p;
      int right_min = f.kind() == NodeKind::Implies ? kImpl : p + 1;
      print_rec(f.left(), left_min, false, out);
      out += f.kind() == NodeKind::Implies ? " -> " : f.kind() == NodeKind::Or ? " | " : " & ";
      print_rec(f.right(), right_min, inner_rightmost, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

Formula parse(std::string_view text, const ParseOptions& options) {
  Parser p(text, options);
  return p.run();
}

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, 0, true, out);
  return out;
}

Signature parse_signature(std::string_view text) {
  Signature sig;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ',' && text[j] != '#') ++j;
    std::string entry(text.substr(i, j - i));
    auto slash = entry.find('/');
    if (slash == std::string::npos) {
      sig.add_constant(entry);
    } else {
      std::string name = entry.substr(0, slash);
      std::string digits = entry.substr(slash + 1);
      if (name.empty() || digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        throw SignatureError("malformed signature entry '" + entry + "'");
      }
      sig.add_predicate(name, std::stoi(digits));
    }
    i = j;
  }
  return sig;
}

std::string print_signature(const Signature& sig) {
  std::string out;
  for (const auto& [name, arity] : sig.predicates()) {
    if (!out.empty()) out += ", ";
    out += name + "/" + std::to_string(arity);
  }
  for (const auto& c : sig.constants()) {
    if (!out.empty()) out += ", ";
    out += c;
  }
  return out;
}

}  // namespace prenex
