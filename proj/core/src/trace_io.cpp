#include "prenex/trace_io.hpp"

#include <json.hpp>

#include "prenex/error.hpp"
#include "prenex/syntax.hpp"

namespace prenex {

using nlohmann::json;

std::string write_trace(const Trace& t, const Signature& extra) {
  Signature sig = Signature::of(t.start);
  sig.merge(extra);
  json doc;
  doc["format"] = kTraceFormat;
  doc["signature"] = {{"predicates", sig.predicates()}, {"constants", sig.constants()}};
  doc["start"] = print(t.start);
  doc["steps"] = json::array();
  for (const auto& s : t.steps) {
    json step;
    step["path"] = s.occurrence.path();
    step["rule"] = s.rule.tag();
    if (s.rule.kind == RuleKind::R8) step["target"] = s.rule.target;
    doc["steps"].push_back(std::move(step));
  }
  doc["end"] = print(t.end);
  return doc.dump(2) + "\n";
}

Trace read_trace(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("trace file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kTraceFormat) {
      throw Error("unknown trace format " + doc.at("format").dump());
    }
    Signature sig;
    const auto& s = doc.at("signature");
    for (const auto& [name, arity] : s.at("predicates").items()) sig.add_predicate(name, arity.get<int>());
    for (const auto& c : s.at("constants")) sig.add_constant(c.get<std::string>());
    ParseOptions options{sig, true};
    Trace t(parse(doc.at("start").get<std::string>(), options));
    const auto& steps = doc.at("steps");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& step = steps[i];
      std::vector<std::uint8_t> path;
      for (const auto& p : step.at("path")) {
        int v = p.get<int>();
        if (v != 0 && v != 1) throw TraceInvalid(i, "path entries must be 0 or 1");
        path.push_back(static_cast<std::uint8_t>(v));
      }
      Occurrence o(std::move(path));
      Rule rule;
      try {
        rule = Rule::from_tag(step.at("rule").get<std::string>(), step.value("target", std::string{}));
        auto [next, applied] = apply(t.end, o, rule);
        t.steps.push_back(std::move(applied));
        t.end = std::move(next);
      } catch (const TraceInvalid&) {
        throw;
      } catch (const Error& e) {
        throw TraceInvalid(i, e.what());
      }
    }
    t.end = parse(doc.at("end").get<std::string>(), options);
    return t;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed trace file: ") + e.what());
  }
}

}  // namespace prenex
