#pragma once

// Equal Subset Sum (C = [-1:1]) via good solution pairs over [0:2]^n and the
// compatibility tester.
//
// A good pair (a, b) for c has floor(n/2) ones and eps_n twos on each side,
// a - b = c, and (a_i, b_i) in {(0,0), (1,1)} wherever c_i = 0.

#include <cstdint>
#include <utility>
#include <vector>

#include "sbal/compat.hpp"
#include "sbal/core.hpp"
#include "sbal/sweep.hpp"

namespace sbal {

inline constexpr double kEssEps = 0.04493;

/// C(π(1), eps_n)^2 * 2^π(0), saturating. Used as p_max. Throws when
/// eps_n > π(1).
std::uint64_t good_pair_count(const SolutionProfile& pi, int eps_n);

/// The true number of good pairs: C(π(1), eps_n)^2 * C(π(0), floor(n/2) - π(1)).
/// Zero when π(1) != π(-1). Never larger than good_pair_count.
std::uint64_t exact_good_pair_count(const SolutionProfile& pi, int eps_n);

bool is_good_pair(std::span<const int> a, std::span<const int> b, std::span<const int> c, int eps_n);

/// Every good pair of c, a in lexicographic order. Small n only.
std::vector<std::pair<CoeffVector, CoeffVector>> enumerate_good_pairs(std::span<const int> c, int eps_n);

/// round(kEssEps n), lowered until eps_n <= π(1) and 12 eps_n < n.
int default_eps_n(const SolutionProfile& pi);

struct EssRoundStats {
  std::uint64_t space = 0;  // |S_0|: vectors meeting the count constraints
  std::uint64_t p_max = 0;
  std::uint64_t buckets = 0;  // equal-sum groups of size >= 2
  CompatStats compat;
};

/// One round on inst as given (no sign flips). c comes back unverified in
/// inst's coordinates.
RoundResult ess_round(const Instance& inst, const SolutionProfile& pi, int eps_n, Rng& rng,
                      EssRoundStats* stats = nullptr);

/// Preconditions: C = [-1:1], π(1) = π(-1), π(0) <= n/3, 12 eps_n < n,
/// eps_n <= π(1).
SolverReport ess_solve_profile(const Instance& inst, const SolutionProfile& pi, int eps_n, Rng& rng,
                               int repeats);

/// Per round: fresh random signs; profiles with π(0) > n/3 or an odd number
/// of nonzeros go to the unbalanced solver on the original x, profiles with
/// π(1) = π(-1) to the good-pair round on the flipped instance, the rest
/// wait for a later round.
SolverReport solve_ess(const Instance& inst, Rng& rng, const SolveOptions& opts = {});

}  // namespace sbal
