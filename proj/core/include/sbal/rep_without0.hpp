#pragma once

// Coefficient shifting for C = [±d]: factor pairs C1 + C2 = C, the
// many-solutions sampler, the shifted representation solver and its
// dispatcher.

#include <cstdint>
#include <vector>

#include "sbal/core.hpp"
#include "sbal/sweep.hpp"

namespace sbal {

struct FactorPair {
  int d = 0;
  int variant = 0;
  std::vector<int> C1, C2;
  double gamma = 0.0;       // for the perfectly balanced profile, bits per entry
  double table_base = 0.0;  // published |L|/|P| base, 0 when there is none
};

/// Number of variants known for d: 1 for d > 7 (canonical only).
int factor_variant_count(int d);

/// Variant 0 is {0,1}, [-d:d-1] \ {-1,0}; the rest are the alternates
/// catalogued for 4 <= d <= 7. The sumset identity is checked here.
FactorPair good_factors(int d, int variant = 0);

std::vector<int> sumset(const std::vector<int>& C1, const std::vector<int>& C2);

/// Ways to write z as a + b with a in C1, b in C2.
int representations(int z, const std::vector<int>& C1, const std::vector<int>& C2);

/// prod_z representations(z)^π(z), saturating. Throws if some z in C has
/// no representation.
std::uint64_t count_pairs_shifted(const SolutionProfile& pi, const std::vector<int>& C1,
                                  const std::vector<int>& C2);

/// log2|C|/2 - log2(|C1||C2|)/2 + log2(count_pairs_shifted(π))/n.
double gamma_for_profile(const SolutionProfile& pi, const FactorPair& f);

/// Balanced-profile gamma in the n -> infinity limit.
double balanced_gamma(int d, const std::vector<int>& C1, const std::vector<int>& C2);

RoundResult many_solutions_round(const Instance& inst, double eps, Rng& rng);
SolverReport many_solutions_sample(const Instance& inst, double eps, Rng& rng, int repeats);

/// p_max = max(2, floor(count_pairs_shifted(π) 2^{-γ n/2})).
std::uint64_t p_max_without0(const SolutionProfile& pi, const FactorPair& f);

RoundResult balanced_without0_round(const Instance& inst, const SolutionProfile& pi, const FactorPair& f,
                                    Rng& rng);
SolverReport balanced_sb_without0(const Instance& inst, const SolutionProfile& pi, const FactorPair& f,
                                  Rng& rng, int repeats);

double without0_routing_eps(const CoefficientSet& set);

/// d in {1, 2} goes to classic_mitm.
SolverReport solve_without0(const Instance& inst, Rng& rng, const SolveOptions& opts = {});

}  // namespace sbal
