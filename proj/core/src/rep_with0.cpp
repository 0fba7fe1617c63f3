#include "sbal/rep_with0.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sbal/hashing.hpp"
#include "sbal/mitm.hpp"

namespace sbal {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = sat_mul(r, b);
  return r;
}

}  // namespace

std::uint64_t solution_pair_count(const SolutionProfile& pi, int d) {
  std::uint64_t g = 1;
  const auto& vals = pi.coeff_set().values();
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const int w = d + 1 - std::abs(vals[k]);
    if (w <= 0) return 0;
    g = sat_mul(g, sat_pow(static_cast<std::uint64_t>(w), pi.counts()[k]));
  }
  return g;
}

std::uint64_t p_max_with0(const SolutionProfile& pi, int d) {
  const std::uint64_t g = solution_pair_count(pi, d);
  const std::uint64_t half = sat_pow(static_cast<std::uint64_t>(d + 1), pi.n() / 2);
  return std::min(g, half);
}

std::uint64_t enumeration_cap(std::size_t n, double space, double p_max) {
  const double cap = 8.0 * static_cast<double>(n) * static_cast<double>(n) * space / std::max(1.0, p_max);
  if (!(cap < 1.8e19)) return UINT64_MAX;
  return static_cast<std::uint64_t>(std::ceil(cap));
}

double with0_routing_eps(const CoefficientSet& set) { return 1.0 / (4.0 * set.cardinality()); }

RoundResult balanced_with0_round(const Instance& inst, const SolutionProfile& pi, Rng& rng,
                                 const With0Options& opts) {
  const auto& set = inst.coeff_set();
  if (!set.has_zero()) throw std::invalid_argument("balanced_sb_with0: needs C = [-d:d]");
  const int d = set.d();
  const std::size_t n = inst.n();
  const std::uint64_t p_max = p_max_with0(pi, d);

  std::uint64_t p = 1, r = 0;
  if (opts.prime) {
    p = *opts.prime;
  } else if (p_max >= 2) {
    p = sample_prime(p_max, rng);
  }
  if (opts.residue) {
    r = *opts.residue % p;
  } else if (p > 1) {
    r = static_cast<std::uint64_t>(uniform_int(rng, 0, static_cast<std::int64_t>(p) - 1));
  }

  Alphabet base;
  for (int v = 0; v <= d; ++v) base.push_back(v);
  const double space = std::pow(static_cast<double>(d + 1), static_cast<double>(n));
  const std::uint64_t cap = enumeration_cap(n, space, static_cast<double>(std::max<std::uint64_t>(p_max, 1)));

  ResidueDP dp(inst.x(), std::vector<Alphabet>(n, base), p);
  ResidueClass S = enumerate_residue_class(dp, r, cap);

  RoundResult res;
  res.prime = p;
  res.list_size = S.vectors.size();
  if (S.cap_exceeded) {
    res.cap_fired = true;
    return res;
  }
  SumList L(S.vectors.size());
  for (std::size_t k = 0; k < S.vectors.size(); ++k) L[k] = {dot(S.vectors[k], inst.x()), k};
  std::sort(L.begin(), L.end());
  meet_each(L, L, Combine::Difference, 0, [&](std::uint64_t a, std::uint64_t b) {
    if (a == b) return false;
    CoeffVector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = S.vectors[a][i] - S.vectors[b][i];
    res.c = std::move(c);
    return true;
  });
  return res;
}

SolverReport balanced_sb_with0(const Instance& inst, const SolutionProfile& pi, Rng& rng, int repeats,
                               const With0Options& opts) {
  SweepTask task;
  task.run = [&](std::size_t, Rng& r) { return balanced_with0_round(inst, pi, r, opts); };
  return sweep_profiles(inst, 1, repeats, rng(), 1, task);
}

SolverReport solve_with0(const Instance& inst, Rng& rng, const SolveOptions& opts) {
  const auto& set = inst.coeff_set();
  if (!set.has_zero()) throw std::invalid_argument("solve_with0: needs C = [-d:d]");
  const double eps = with0_routing_eps(set);
  std::vector<SolutionProfile> profiles;
  std::vector<char> unbalanced;
  for (auto& p : enumerate_profiles(static_cast<int>(inst.n()), set)) {
    if (p.count(0) == p.n()) continue;
    unbalanced.push_back(is_eps_unbalanced(p, eps));
    profiles.push_back(p);
  }
  const int rounds = opts.repeats > 0 ? opts.repeats : default_repeats(inst.n());
  SweepTask task;
  task.run = [&](std::size_t k, Rng& r) {
    return unbalanced[k] ? unbalanced_round(inst, profiles[k], r) : balanced_with0_round(inst, profiles[k], r);
  };
  SolverReport rep = sweep_profiles(inst, profiles.size(), rounds, rng(), opts.threads, task);
  rep.stats["balanced_profiles"] =
      static_cast<std::int64_t>(std::count(unbalanced.begin(), unbalanced.end(), 0));
  return rep;
}

}  // namespace sbal
