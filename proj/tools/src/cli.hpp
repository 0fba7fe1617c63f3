#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sbal/core.hpp"
#include "sbal/sweep.hpp"

namespace sbal::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,  // verify: not a solution
  kBadInput = 2,
  kNoSolution = 3,
  kRetryable = 4,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// auto|mitm|unbalanced|rep0|repnz|ess|oracle; "auto" resolves by coefficient set.
std::string resolve_algo(const std::string& algo, const CoefficientSet& set);
SolverReport run_algo(const std::string& algo, const Instance& inst, std::uint64_t seed, const SolveOptions& opts);

}  // namespace sbal::cli
