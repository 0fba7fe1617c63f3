#include "json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace sbal::io {

CoefficientSet coeff_set_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("d")) throw InputError("coeff_set needs kind and d");
  if (!j["kind"].is_string() || !j["d"].is_number_integer()) throw InputError("coeff_set: bad field types");
  const std::string kind = j["kind"];
  const long long d = j["d"].get<long long>();
  if (d < 1 || d > CoefficientSet::kMaxD) throw InputError("coeff_set: d out of range");
  if (kind == "range") return CoefficientSet::full_range(static_cast<int>(d));
  if (kind == "no_zero") return CoefficientSet::no_zero(static_cast<int>(d));
  throw InputError("coeff_set: kind must be range or no_zero");
}

json coeff_set_to_json(const CoefficientSet& set) {
  return {{"kind", set.has_zero() ? "range" : "no_zero"}, {"d", set.d()}};
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  for (const char* k : {"n", "x", "coeff_set"})
    if (!j.contains(k)) throw InputError(std::string("instance is missing ") + k);
  if (!j["n"].is_number_integer() || !j["x"].is_array()) throw InputError("instance: bad field types");
  std::vector<std::int64_t> x;
  for (const auto& v : j["x"]) {
    if (!v.is_number_integer()) throw InputError("instance: x entries must be integers");
    x.push_back(v.get<std::int64_t>());
  }
  if (j["n"].get<long long>() != static_cast<long long>(x.size())) throw InputError("instance: n does not match x");
  try {
    return Instance(std::move(x), coeff_set_from_json(j["coeff_set"]));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json instance_to_json(const Instance& inst) {
  json x = json::array();
  for (auto v : inst.x()) x.push_back(v);
  return {{"n", inst.n()}, {"x", x}, {"coeff_set", coeff_set_to_json(inst.coeff_set())}};
}

CoeffVector solution_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("c") ? j["c"] : j;
  if (!arr.is_array()) throw InputError("solution must be an array or {\"c\": [...]}");
  CoeffVector c;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw InputError("solution entries must be integers");
    const long long z = v.get<long long>();
    if (z < -CoefficientSet::kMaxD || z > CoefficientSet::kMaxD) throw InputError("solution entry out of range");
    c.push_back(static_cast<int>(z));
  }
  return c;
}

json report_to_json(const SolverReport& rep, const std::string& algo, std::uint64_t seed) {
  json j;
  j["schema"] = kReportSchema;
  j["outcome"] = outcome_name(rep.outcome);
  j["c"] = rep.solution ? json(rep.solution->c) : json(nullptr);
  j["algo"] = algo;
  j["seed"] = seed;
  j["stats"] = json::object();
  for (const auto& [k, v] : rep.stats) j["stats"][k] = v;
  j["notes"] = rep.notes;
  return j;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_source(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace sbal::io
