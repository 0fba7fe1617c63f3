#pragma once

// Instance, solution and report JSON. Kept out of the core library so that
// it stays free of third-party headers.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sbal/core.hpp"

namespace sbal::io {

using nlohmann::json;

// Anything wrong with user-supplied input; the CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kReportSchema = 1;

CoefficientSet coeff_set_from_json(const json& j);
json coeff_set_to_json(const CoefficientSet& set);

// {"n": 4, "x": [...], "coeff_set": {"kind": "range", "d": 1}}
Instance instance_from_json(const json& j);
json instance_to_json(const Instance& inst);

// {"c": [...]} or a bare array
CoeffVector solution_from_json(const json& j);

json report_to_json(const SolverReport& rep, const std::string& algo, std::uint64_t seed);

json parse_text(const std::string& text);
std::string read_source(const std::string& path);  // "-" reads stdin

}  // namespace sbal::io
