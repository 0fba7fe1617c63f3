#pragma once

// Representation-technique solver for C = [-d:d] and its profile dispatcher.

#include <cstdint>
#include <optional>

#include "sbal/core.hpp"
#include "sbal/sweep.hpp"

namespace sbal {

/// min(prod_z (d+1-|z|)^π(z), (d+1)^floor(n/2)), saturating.
std::uint64_t p_max_with0(const SolutionProfile& pi, int d);

/// Number of solution pairs (a, b) in [0:d]^n x [0:d]^n with a - b = c for
/// any c with profile π, saturating.
std::uint64_t solution_pair_count(const SolutionProfile& pi, int d);

/// 8 n^2 * space / p_max, saturating; the enumeration stops beyond it.
std::uint64_t enumeration_cap(std::size_t n, double space, double p_max);

struct With0Options {
  // Test hooks: pin the prime and residue of every round.
  std::optional<std::uint64_t> prime;
  std::optional<std::uint64_t> residue;
};

RoundResult balanced_with0_round(const Instance& inst, const SolutionProfile& pi, Rng& rng,
                                 const With0Options& opts = {});

SolverReport balanced_sb_with0(const Instance& inst, const SolutionProfile& pi, Rng& rng, int repeats,
                               const With0Options& opts = {});

/// Routing threshold: profiles that are 1/(4|C|)-unbalanced go to the
/// unbalanced solver.
double with0_routing_eps(const CoefficientSet& set);

SolverReport solve_with0(const Instance& inst, Rng& rng, const SolveOptions& opts = {});

}  // namespace sbal
