#pragma once

// Classic Meet-in-the-Middle and the profile-restricted unbalanced variant.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sbal/core.hpp"
#include "sbal/sweep.hpp"

namespace sbal {

struct SumEntry {
  std::int64_t sum;
  std::uint64_t code;  // caller-defined handle back to the vector

  bool operator<(const SumEntry& o) const { return sum < o.sum || (sum == o.sum && code < o.code); }
};
using SumList = std::vector<SumEntry>;

inline constexpr std::uint64_t kListGuard = std::uint64_t{1} << 26;

/// Two-pointer scan over sorted lists. Visits every pair with
/// L.sum - R.sum == target (Difference) or L.sum + R.sum == target (Sum),
/// grouped by sum; the visitor returns true to stop.
void meet_each(const SumList& L, const SumList& R, Combine combine, std::int64_t target,
               const std::function<bool(std::uint64_t, std::uint64_t)>& visit);

/// First matching pair of payloads. Throws on unsorted input.
std::optional<std::pair<std::uint64_t, std::uint64_t>> meet(const SumList& L, const SumList& R,
                                                            Combine combine, std::int64_t target = 0);

/// Exact and deterministic; splits at ceil(n/2).
SolverReport classic_mitm(const Instance& inst, std::uint64_t guard = kListGuard);

enum class Half { A, B };

/// Per-coefficient counts for each half. Half A takes ceil(π(z)/2) in
/// coefficient order until it holds ceil(n/2) entries; B gets the rest.
std::pair<std::vector<int>, std::vector<int>> split_half_counts(const SolutionProfile& pi);

/// Every vector of the given half length whose profile is that half's counts.
std::vector<CoeffVector> enumerate_S(const CoefficientSet& set, const SolutionProfile& pi, Half half,
                                     std::uint64_t guard = kListGuard);

/// Multinomial size of enumerate_S without enumerating (saturating).
std::uint64_t half_list_size(const SolutionProfile& pi, Half half);

/// `repeats` rounds of: random equal partition, enumerate both halves,
/// meet under Sum. Only verified solutions come back.
SolverReport unbalanced_sb(const Instance& inst, const SolutionProfile& pi, Rng& rng, int repeats);

/// One round of the above for the sweep.
RoundResult unbalanced_round(const Instance& inst, const SolutionProfile& pi, Rng& rng);

/// Profile guessing with unbalanced_sb on every profile (or only the
/// listed ones).
SolverReport solve_unbalanced(const Instance& inst, Rng& rng, const SolveOptions& opts = {},
                              const std::vector<SolutionProfile>* only = nullptr);

}  // namespace sbal
