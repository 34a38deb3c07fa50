#include "mmsalloc/json_io.hpp"

#include <fstream>
#include <sstream>

#include "mmsalloc/error.hpp"

namespace mmsalloc {

namespace {

[[noreturn]] void bad(const std::string& what) { throw MmsError(ErrorCode::parse_error, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

Bundle bundle_from_json(const Json& j) {
  if (!j.is_array()) bad("bundle must be an array");
  std::vector<ItemId> items;
  for (const Json& x : j) items.push_back(as_int(x, "item id"));
  return Bundle(std::move(items));
}

Json bundle_to_json(const Bundle& b) { return Json(b.items()); }

}  // namespace

Json to_json(const Rational& value) {
  if (value.is_integer()) {
    const BigInt num = value.numerator();
    if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max())
      return Json(num.convert_to<long long>());
  }
  return Json(value.to_string());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  bad("value must be an integer or a \"p/q\" string");
}

Json to_json(const Instance& instance) {
  Json rows = Json::array();
  for (const auto& row : instance.rows()) {
    Json r = Json::array();
    for (const Rational& v : row) r.push_back(to_json(v));
    rows.push_back(std::move(r));
  }
  return Json{{"kind", to_string(instance.kind())}, {"n", instance.n()}, {"m", instance.m()}, {"valuations", rows}};
}

Instance instance_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) bad("kind must be a string");
  const int n = as_int(field(j, "n"), "n");
  const int m = as_int(field(j, "m"), "m");
  const Json& vals = field(j, "valuations");
  if (!vals.is_array()) bad("valuations must be an array");
  std::vector<std::vector<Rational>> rows;
  for (const Json& r : vals) {
    if (!r.is_array()) bad("valuation row must be an array");
    std::vector<Rational> row;
    for (const Json& v : r) row.push_back(rational_from_json(v));
    rows.push_back(std::move(row));
  }
  Instance inst = make_instance(parse_item_kind(kind.get<std::string>()), std::move(rows));
  if (inst.n() != n || inst.m() != m)
    throw MmsError(ErrorCode::shape_mismatch, "declared n/m do not match the valuation matrix");
  return inst;
}

Json to_json(const Allocation& allocation) {
  Json bundles = Json::array();
  for (const Bundle& b : allocation.bundles) bundles.push_back(bundle_to_json(b));
  return Json{{"bundles", bundles}};
}

Allocation allocation_from_json(const Json& j) {
  const Json& bundles = field(j, "bundles");
  if (!bundles.is_array()) bad("bundles must be an array");
  Allocation a;
  for (const Json& b : bundles) a.bundles.push_back(bundle_from_json(b));
  return a;
}

Json to_json(const ReductionStep& step) {
  Json awards = Json::array();
  for (const Award& a : step.awards) awards.push_back(Json{{"agent", a.agent}, {"bundle", bundle_to_json(a.bundle)}});
  return Json{{"rule", to_string(step.rule)}, {"branch", step.branch}, {"awards", awards}};
}

ReductionStep step_from_json(const Json& j) {
  ReductionStep s;
  const Json& rule = field(j, "rule");
  if (!rule.is_string()) bad("rule must be a string");
  s.rule = parse_rule_id(rule.get<std::string>());
  if (j.contains("branch")) {
    if (!j.at("branch").is_string()) bad("branch must be a string");
    s.branch = j.at("branch").get<std::string>();
  }
  const Json& awards = field(j, "awards");
  if (!awards.is_array()) bad("awards must be an array");
  for (const Json& a : awards) s.awards.push_back(Award{as_int(field(a, "agent"), "agent"), bundle_from_json(field(a, "bundle"))});
  return s;
}

Json to_json(const ReductionTrace& trace) {
  Json steps = Json::array();
  for (const ReductionStep& s : trace.steps) steps.push_back(to_json(s));
  Json final = to_json(trace.final);
  final["agents"] = trace.final_agents;
  return Json{{"steps", steps}, {"final", final}, {"final_rule", trace.final_rule}};
}

ReductionTrace trace_from_json(const Json& j) {
  ReductionTrace t;
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) bad("steps must be an array");
  for (const Json& s : steps) t.steps.push_back(step_from_json(s));
  const Json& final = field(j, "final");
  t.final = allocation_from_json(final);
  if (final.contains("agents")) {
    for (const Json& a : final.at("agents")) t.final_agents.push_back(as_int(a, "agent"));
  } else {
    // Without an agent list the final bundles go to the agents no step served.
    std::vector<bool> served;
    for (const ReductionStep& s : t.steps)
      for (const Award& a : s.awards) {
        if (a.agent >= static_cast<int>(served.size())) served.resize(a.agent + 1, false);
        served[a.agent] = true;
      }
    for (AgentId a = 1; static_cast<int>(t.final_agents.size()) < static_cast<int>(t.final.bundles.size()); ++a)
      if (a >= static_cast<int>(served.size()) || !served[a]) t.final_agents.push_back(a);
  }
  if (t.final_agents.size() != t.final.bundles.size()) bad("final agents and bundles differ in length");
  if (j.contains("final_rule") && j.at("final_rule").is_string()) t.final_rule = j.at("final_rule").get<std::string>();
  return t;
}

Json to_json(const SolveOutcome& outcome) {
  Json j{{"status", to_string(outcome.status)}, {"diagnostic", outcome.diagnostic}};
  if (outcome.allocation) j["allocation"] = to_json(*outcome.allocation);
  if (outcome.trace) j["trace"] = to_json(*outcome.trace);
  if (!outcome.mu.empty()) {
    Json mu = Json::array(), values = Json::array();
    for (const Rational& x : outcome.mu) mu.push_back(to_json(x));
    for (const Rational& x : outcome.values) values.push_back(to_json(x));
    j["certificate"] = Json{{"mu", mu}, {"values", values}};
  }
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) bad("write failed for " + path.string());
}

}  // namespace mmsalloc
