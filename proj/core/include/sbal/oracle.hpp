#pragma once

// Exhaustive ground truth. Nothing here is clever on purpose.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sbal/core.hpp"

namespace sbal {

inline constexpr std::uint64_t kOracleGuard = 100'000'000;

/// All nonzero c with c·x = 0 in lexicographic order (entries ascending,
/// first index slowest). Return false from fn to stop early.
void for_each_solution(const Instance& inst, const std::function<bool(const CoeffVector&)>& fn,
                       std::uint64_t guard = kOracleGuard);

/// First solution whose first nonzero entry is positive, in the order above.
SolverReport brute_force_solve(const Instance& inst, std::uint64_t guard = kOracleGuard);

std::uint64_t count_solutions(const Instance& inst, std::uint64_t guard = kOracleGuard);

/// A solution maximizing π(0); ties go to the first canonical one.
std::optional<Solution> min_support_solution(const Instance& inst, std::uint64_t guard = kOracleGuard);

using Alphabet = std::vector<int>;

struct PairFamily {
  std::vector<std::pair<CoeffVector, CoeffVector>> pairs;
};

/// All (a, b) with a_i in left[i], b_i in right[i] and a_i ∘ b_i = c_i.
PairFamily enumerate_pairs(std::span<const int> c, const std::vector<Alphabet>& left,
                           const std::vector<Alphabet>& right, Combine combine,
                           std::uint64_t guard = kOracleGuard);

/// Quadratic scan for (a, b) with a - b entrywise in band. Returns indices.
std::optional<std::pair<std::size_t, std::size_t>> brute_force_compatible_pair(
    const std::vector<CoeffVector>& A, const std::vector<CoeffVector>& B, const CoefficientSet& band);

}  // namespace sbal
