// prenex: command-line front end for classification, normalization, trace
// checking, reachability search and the verification suites.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "prenex/corpus.hpp"
#include "prenex/error.hpp"
#include "prenex/hierarchy.hpp"
#include "prenex/normalize.hpp"
#include "prenex/oracle.hpp"
#include "prenex/semantics.hpp"
#include "prenex/syntax.hpp"
#include "prenex/trace_io.hpp"
#include "prenex/verify.hpp"

namespace {

using nlohmann::json;
using namespace prenex;

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

// Raised for bad input files and option combinations.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// `spec` is a signature file or inline text; empty falls back to the file
// named by PRENEX_SIGNATURE.
std::optional<Signature> load_signature(const std::string& spec) {
  std::string source = spec;
  if (source.empty()) {
    const char* env = std::getenv("PRENEX_SIGNATURE");
    if (env == nullptr || *env == '\0') return std::nullopt;
    return parse_signature(read_file(env));
  }
  if (std::filesystem::is_regular_file(source)) return parse_signature(read_file(source));
  return parse_signature(source);
}

struct FormulaInput {
  std::string text;
  std::string file;
  std::string signature;

  void add_to(CLI::App* cmd, const std::string& name = "formula") {
    cmd->add_option(name, text, "Formula text");
    cmd->add_option("-f,--file", file, "Read the formula from a file (first formula line)");
    cmd->add_option("-s,--signature", signature, "Signature file or inline list, e.g. \"P/1, Q/2, c\"");
  }

  Formula get() const {
    auto sig = load_signature(signature);
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw UsageError("cannot open " + file);
      auto corpus = read_corpus(in, sig);
      if (corpus.formulas.empty()) throw UsageError(file + " holds no formula");
      return corpus.formulas.front();
    }
    if (text.empty()) throw UsageError("no formula given");
    return parse(text, ParseOptions{sig, false});
  }
};

json alt_json(const AltSet& a) {
  json out = json::array();
  if (a.has_empty) out.push_back("<>");
  for (const auto& [sign, len] : a.pairs) out.push_back(std::string(1, sign == Sign::Plus ? '+' : '-') + std::to_string(len));
  return out;
}

std::string kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::F0:
      return "F0";
    case ClassKind::E:
      return "E";
    case ClassKind::U:
      return "U";
    case ClassKind::PF:
      return "PF";
  }
  return "?";
}

json class_json(const std::optional<PrenexClass>& c) {
  if (!c) return nullptr;
  return {{"kind", to_string(c->kind)}, {"index", c->index}, {"name", c->to_string()}};
}

constexpr ClassFamily kFamilies[] = {ClassFamily::EPlus, ClassFamily::UPlus, ClassFamily::FPlus, ClassFamily::E,
                                     ClassFamily::U,     ClassFamily::PF,    ClassFamily::F};

int cmd_classify(const FormulaInput& in, bool as_json) {
  Formula f = in.get();
  ClassLabel label = classify(f);
  AltSet a = alt(f);
  int top = label.degree + 1;
  if (as_json) {
    json doc{{"formula", print(f)},
             {"degree", label.degree},
             {"kind", kind_name(label.kind)},
             {"label", label.to_string()},
             {"alt", alt_json(a)},
             {"prenex_degree", label.prenex_degree()}};
    json table = json::array();
    for (int k = 0; k <= top; ++k) {
      json row{{"k", k}};
      for (auto fam : kFamilies) row[to_string(fam)] = in_class(label, fam, k);
      table.push_back(std::move(row));
    }
    doc["membership"] = std::move(table);
    std::cout << doc.dump(2) << "\n";
    return kPass;
  }
  std::cout << "formula        " << print(f) << "\n"
            << "class          " << label.to_string() << " (degree " << label.degree << ", kind "
            << kind_name(label.kind) << ")\n"
            << "prenex degree  C_" << label.prenex_degree() << "\n"
            << "alt            " << a.to_string() << "\n\n"
            << "k ";
  for (auto fam : kFamilies) std::cout << "  " << std::left << std::setw(3) << to_string(fam);
  std::cout << "\n";
  for (int k = 0; k <= top; ++k) {
    std::cout << k << " ";
    for (auto fam : kFamilies) std::cout << "  " << std::setw(3) << (in_class(label, fam, k) ? "yes" : "-");
    std::cout << "\n";
  }
  return kPass;
}

json normalized_json(const Normalized& n) {
  return {{"result", print(n.result)}, {"class", class_json(prenex_class(n.result))}, {"steps", n.trace.steps.size()}};
}

void report_normalized(const std::string& title, const Normalized& n) {
  auto c = prenex_class(n.result);
  std::cout << title << print(n.result) << "  [" << (c ? c->to_string() : "not prenex") << ", "
            << n.trace.steps.size() << " steps]\n";
}

struct NormalizeArgs {
  std::string target = "prenex";
  int k = -1;
  std::string trace;
  std::string sigma_trace;
  std::string pi_trace;
};

int cmd_normalize(const FormulaInput& in, const NormalizeArgs& a, bool as_json) {
  Formula f = in.get();
  auto sig = load_signature(in.signature).value_or(Signature{});
  if (a.target == "min") {
    auto report = minimal_normalize(f);
    if (!a.sigma_trace.empty() && report.sigma) write_file(a.sigma_trace, write_trace(report.sigma->trace, sig));
    if (!a.pi_trace.empty() && report.pi) write_file(a.pi_trace, write_trace(report.pi->trace, sig));
    if (as_json) {
      json doc{{"formula", print(f)}, {"label", report.label.to_string()}};
      doc["sigma"] = report.sigma ? normalized_json(*report.sigma) : json(nullptr);
      doc["pi"] = report.pi ? normalized_json(*report.pi) : json(nullptr);
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "class  " << report.label.to_string() << "\n";
      if (report.sigma) report_normalized("sigma  ", *report.sigma);
      if (report.pi) report_normalized("pi     ", *report.pi);
    }
    return kPass;
  }
  Normalized n{f, Trace(f)};
  if (a.target == "prenex") {
    if (a.k >= 0) throw UsageError("--k needs --target sigma or pi");
    n = to_prenex(f);
  } else {
    if (a.k < 0) throw UsageError("--target " + a.target + " needs --k");
    n = to_target(f, a.target == "sigma" ? PrenexKind::Sigma : PrenexKind::Pi, a.k);
  }
  if (!a.trace.empty()) write_file(a.trace, write_trace(n.trace, sig));
  if (as_json) {
    json doc = normalized_json(n);
    doc["formula"] = print(f);
    std::cout << doc.dump(2) << "\n";
  } else {
    report_normalized("", n);
  }
  return kPass;
}

int cmd_check(const std::string& path, bool as_json) {
  std::string text = read_file(path);
  try {
    Trace t = [&] {
      try {
        return read_trace(text);
      } catch (const TraceInvalid&) {
        throw;
      } catch (const Error& e) {
        throw UsageError(path + ": " + e.what());
      }
    }();
    Formula end = replay(t);
    if (as_json) {
      std::cout << json{{"valid", true}, {"steps", t.steps.size()}, {"end", print(end)}}.dump(2) << "\n";
    } else {
      std::cout << "valid: " << t.steps.size() << " steps, ends in " << print(end) << "\n";
    }
    return kPass;
  } catch (const TraceInvalid& e) {
    if (as_json) {
      std::cout << json{{"valid", false}, {"step", e.index()}, {"reason", e.what()}}.dump(2) << "\n";
    } else {
      std::cout << "invalid at step " << e.index() << ": " << e.what() << "\n";
    }
    return kViolation;
  }
}

int cmd_oracle(const FormulaInput& in, std::size_t max_size, const std::string& graph, bool as_json) {
  Formula f = in.get();
  OracleOptions options{max_size};
  auto r = reachable(f, options);
  if (!graph.empty()) {
    RewriteGraph g(options);
    std::ofstream out(graph);
    if (!out) throw UsageError("cannot write " + graph);
    g.write_dot(out, g.add(f));
  }
  auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
  if (as_json) {
    json doc{{"formula", print(f)},         {"label", classify(f).to_string()}, {"explored", r.explored},
             {"edges", r.edges},            {"min_sigma", opt(r.min_sigma)},    {"min_pi", opt(r.min_pi)},
             {"max_k", r.max_k}};
    doc["classes"] = json::array();
    for (const auto& c : mask_classes(r.classes)) doc["classes"].push_back(class_json(c));
    doc["prenex"] = json::array();
    for (const auto& p : r.prenex) doc["prenex"].push_back(print(p));
    json flags = json::array();
    for (int k = 0; k <= r.max_k; ++k) {
      auto i = static_cast<std::size_t>(k);
      flags.push_back({{"k", k},
                       {"sigma_plus", bool(r.sigma_plus[i])},
                       {"pi_plus", bool(r.pi_plus[i])},
                       {"sigma", bool(r.sigma_exact[i])},
                       {"pi", bool(r.pi_exact[i])}});
    }
    doc["flags"] = std::move(flags);
    std::cout << doc.dump(2) << "\n";
    return kPass;
  }
  auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
  std::cout << "formula     " << print(f) << "  [" << classify(f).to_string() << "]\n"
            << "explored    " << r.explored << " states, " << r.edges << " edges\n"
            << "min Sigma   " << show(r.min_sigma) << "\n"
            << "min Pi      " << show(r.min_pi) << "\n"
            << "prenex forms (" << r.prenex.size() << "):\n";
  for (const auto& p : r.prenex) std::cout << "  " << print(p) << "  [" << prenex_class(p)->to_string() << "]\n";
  std::cout << "\nk  Sigma_k^+  Pi_k^+  Sigma_k  Pi_k\n";
  for (int k = 0; k <= r.max_k; ++k) {
    auto i = static_cast<std::size_t>(k);
    auto yn = [](bool b) { return b ? "yes" : "-"; };
    std::cout << k << "  " << std::left << std::setw(9) << yn(r.sigma_plus[i]) << "  " << std::setw(6)
              << yn(r.pi_plus[i]) << "  " << std::setw(7) << yn(r.sigma_exact[i]) << "  " << yn(r.pi_exact[i])
              << "\n";
  }
  return kPass;
}

int cmd_equiv(const std::string& a, const std::string& b, const std::string& signature, int max_domain,
              bool as_json) {
  if (max_domain < 1 || max_domain > 3) throw UsageError("--max-domain must be 1, 2 or 3");
  auto sig = load_signature(signature);
  if (!sig) {
    // Both formulas must agree on which names are constants.
    Signature joint = Signature::of(parse(a));
    joint.merge(Signature::of(parse(b)));
    sig = joint;
  }
  ParseOptions options{sig, false};
  Formula fa = parse(a, options);
  Formula fb = parse(b, options);
  auto r = semantically_equivalent(fa, fb, max_domain);
  if (as_json) {
    json doc{{"equivalent", r.equivalent}, {"interpretations", r.interpretations}, {"max_domain", max_domain}};
    doc["counterexample"] = r.counterexample ? json(r.counterexample->to_string()) : json(nullptr);
    std::cout << doc.dump(2) << "\n";
  } else if (r.equivalent) {
    std::cout << "equivalent on all " << r.interpretations << " interpretations with domain size <= " << max_domain
              << "\n";
  } else {
    std::cout << "not equivalent; counterexample: " << r.counterexample->to_string() << "\n";
  }
  return r.equivalent ? kPass : kViolation;
}

struct GenArgs {
  std::size_t count = 10000;
  std::size_t max_nodes = 8;
  std::uint64_t seed = RandomCorpusOptions{}.seed;
  std::string signature;
  bool exhaustive = false;
  int max_quantifiers = 3;
  int max_connectives = 3;
  std::string output;
};

int cmd_gen(const GenArgs& a) {
  Corpus corpus;
  if (a.exhaustive) {
    corpus.signature = default_signature();
    corpus.formulas = exhaustive_corpus(a.max_quantifiers, a.max_connectives);
  } else {
    RandomCorpusOptions o;
    o.count = a.count;
    o.max_nodes = a.max_nodes;
    o.seed = a.seed;
    if (auto sig = load_signature(a.signature)) o.signature = *sig;
    if (o.signature.predicates().empty()) throw UsageError("the signature declares no predicate");
    corpus.signature = o.signature;
    corpus.formulas = random_corpus(o);
  }
  if (a.output.empty()) {
    write_corpus(std::cout, corpus);
  } else {
    std::ofstream out(a.output);
    if (!out) throw UsageError("cannot write " + a.output);
    write_corpus(out, corpus);
  }
  return kPass;
}

int cmd_verify(const std::vector<std::string>& suites, const std::string& corpus_path, int max_domain,
               std::size_t max_size, bool as_json) {
  std::vector<Suite> chosen;
  for (const auto& name : suites) {
    if (name == "all") {
      auto all = all_suites();
      chosen.insert(chosen.end(), all.begin(), all.end());
    } else if (auto s = suite_from_name(name)) {
      chosen.push_back(*s);
    } else {
      throw UsageError("unknown suite " + name);
    }
  }
  std::vector<Formula> corpus;
  if (corpus_path.empty()) {
    corpus = default_corpus();
  } else {
    std::ifstream in(corpus_path);
    if (!in) throw UsageError("cannot open " + corpus_path);
    corpus = read_corpus(in, load_signature("")).formulas;
  }
  VerifyOptions options;
  options.max_domain = max_domain;
  options.oracle.max_size = max_size;
  bool ok = true;
  json doc = json::array();
  for (Suite s : chosen) {
    auto r = run_suite(s, corpus, options);
    ok = ok && r.passed();
    if (as_json) {
      doc.push_back({{"suite", suite_name(s)},
                     {"passed", r.passed()},
                     {"items", r.items},
                     {"checks", r.checks},
                     {"failures", r.failures},
                     {"first_failure", r.passed() ? json(nullptr) : json(r.first_failure)},
                     {"seconds", r.seconds}});
      continue;
    }
    std::cout << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(17) << suite_name(s) << " items "
              << r.items << ", checks " << r.checks << ", failures " << r.failures << " (" << std::fixed
              << std::setprecision(1) << r.seconds << " s)\n";
    if (!r.passed()) std::cout << "     first counterexample: " << r.first_failure << "\n";
  }
  if (as_json) std::cout << json{{"corpus_size", corpus.size()}, {"suites", doc}}.dump(2) << "\n";
  return ok ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prenex normalization and hierarchy toolkit"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Structured output on stdout");

  FormulaInput classify_in;
  auto* classify = app.add_subcommand("classify", "Alternation paths and class of a formula");
  classify_in.add_to(classify);

  FormulaInput normalize_in;
  NormalizeArgs normalize_args;
  auto* normalize = app.add_subcommand("normalize", "Prenex a formula, optionally into a target class");
  normalize_in.add_to(normalize);
  normalize->add_option("-t,--target", normalize_args.target, "prenex, sigma, pi or min")
      ->check(CLI::IsMember({"prenex", "sigma", "pi", "min"}));
  normalize->add_option("-k,--k", normalize_args.k, "Class index for sigma/pi")->check(CLI::NonNegativeNumber);
  normalize->add_option("--trace", normalize_args.trace, "Write the trace file here");
  normalize->add_option("--sigma-trace", normalize_args.sigma_trace, "With --target min: Sigma witness trace");
  normalize->add_option("--pi-trace", normalize_args.pi_trace, "With --target min: Pi witness trace");

  std::string trace_path;
  auto* check = app.add_subcommand("check", "Replay and validate a trace file");
  check->alias("check-step");
  check->add_option("trace", trace_path, "Trace file")->required();

  FormulaInput oracle_in;
  std::size_t max_size = OracleOptions{}.max_size;
  std::string graph_path;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive rewrite search modulo alpha");
  oracle_in.add_to(oracle);
  oracle->add_option("--max-size", max_size, "Bound on quantifiers plus connectives");
  oracle->add_option("--graph", graph_path, "Write the rewrite graph in Graphviz format");

  std::string equiv_a, equiv_b, equiv_sig;
  int max_domain = 2;
  auto* equiv = app.add_subcommand("equiv", "Compare two formulas on all small finite models");
  equiv->add_option("first", equiv_a, "Formula")->required();
  equiv->add_option("second", equiv_b, "Formula")->required();
  equiv->add_option("-s,--signature", equiv_sig, "Signature file or inline list");
  equiv->add_option("--max-domain", max_domain, "Largest domain size (1-3)");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Write a corpus file");
  gen->add_option("--count", gen_args.count, "Number of random formulas");
  gen->add_option("--max-nodes", gen_args.max_nodes, "Node bound per formula")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed, "Random seed");
  gen->add_option("-s,--signature", gen_args.signature, "Signature file or inline list");
  gen->add_flag("--exhaustive", gen_args.exhaustive, "Every shape up to the bounds below instead");
  gen->add_option("--max-quantifiers", gen_args.max_quantifiers, "Exhaustive bound")->check(CLI::Range(0, 5));
  gen->add_option("--max-connectives", gen_args.max_connectives, "Exhaustive bound")->check(CLI::Range(0, 5));
  gen->add_option("-o,--output", gen_args.output, "Output file (default stdout)");

  std::vector<std::string> suites{"all"};
  std::string corpus_path;
  int verify_domain = 2;
  std::size_t verify_size = OracleOptions{}.max_size;
  auto* verify = app.add_subcommand("verify", "Run theorem-checking suites on a corpus");
  verify->add_option("--suite", suites, "Suite name(s) or all")->delimiter(',');
  verify->add_option("--corpus", corpus_path, "Corpus file (default: built-in corpus)");
  verify->add_option("--max-domain", verify_domain, "Domain bound for semantic checks")->check(CLI::Range(1, 3));
  verify->add_option("--max-size", verify_size, "Oracle size bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*classify) return cmd_classify(classify_in, as_json);
    if (*normalize) return cmd_normalize(normalize_in, normalize_args, as_json);
    if (*check) return cmd_check(trace_path, as_json);
    if (*oracle) return cmd_oracle(oracle_in, max_size, graph_path, as_json);
    if (*equiv) return cmd_equiv(equiv_a, equiv_b, equiv_sig, max_domain, as_json);
    if (*gen) return cmd_gen(gen_args);
    if (*verify) return cmd_verify(suites, corpus_path, verify_domain, verify_size, as_json);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeBoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SignatureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArityMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ReservedName& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
