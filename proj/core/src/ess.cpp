#include "sbal/ess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sbal/hashing.hpp"
#include "sbal/mitm.hpp"
#include "sbal/rep_with0.hpp"

namespace sbal {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

void check_ess_set(const CoefficientSet& set, const char* who) {
  if (!(set == CoefficientSet::full_range(1))) throw std::invalid_argument(std::string(who) + ": needs C = [-1:1]");
}

}  // namespace

std::uint64_t good_pair_count(const SolutionProfile& pi, int eps_n) {
  check_ess_set(pi.coeff_set(), "good_pair_count");
  if (eps_n < 0 || eps_n > pi.count(1)) throw std::invalid_argument("good_pair_count: eps_n must lie in [0, π(1)]");
  const std::uint64_t b = binom(pi.count(1), eps_n);
  std::uint64_t r = sat_mul(b, b);
  for (int i = 0; i < pi.count(0); ++i) r = sat_mul(r, 2);
  return r;
}

std::uint64_t exact_good_pair_count(const SolutionProfile& pi, int eps_n) {
  check_ess_set(pi.coeff_set(), "exact_good_pair_count");
  if (eps_n < 0 || eps_n > pi.count(1)) throw std::invalid_argument("exact_good_pair_count: eps_n must lie in [0, π(1)]");
  if (pi.count(1) != pi.count(-1)) return 0;
  const std::uint64_t b = binom(pi.count(1), eps_n);
  return sat_mul(sat_mul(b, b), binom(pi.count(0), pi.n() / 2 - pi.count(1)));
}

bool is_good_pair(std::span<const int> a, std::span<const int> b, std::span<const int> c, int eps_n) {
  const std::size_t n = c.size();
  if (a.size() != n || b.size() != n) return false;
  std::size_t ones_a = 0, ones_b = 0, twos_a = 0, twos_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < 0 || a[i] > 2 || b[i] < 0 || b[i] > 2) return false;
    if (a[i] - b[i] != c[i]) return false;
    if (c[i] == 0 && a[i] == 2) return false;
    ones_a += a[i] == 1;
    ones_b += b[i] == 1;
    twos_a += a[i] == 2;
    twos_b += b[i] == 2;
  }
  const std::size_t e = static_cast<std::size_t>(eps_n);
  return ones_a == n / 2 && ones_b == n / 2 && twos_a == e && twos_b == e;
}

std::vector<std::pair<CoeffVector, CoeffVector>> enumerate_good_pairs(std::span<const int> c, int eps_n) {
  const std::size_t n = c.size();
  if (n > 24) throw GuardExceeded("enumerate_good_pairs: n too large");
  // each coordinate has two local choices: c=1 -> (1,0)|(2,1), c=-1 -> (0,1)|(1,2),
  // c=0 -> (0,0)|(1,1)
  std::vector<std::pair<CoeffVector, CoeffVector>> out;
  CoeffVector a(n), b(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      const int hi = static_cast<int>((mask >> (n - 1 - i)) & 1);
      if (c[i] == 1) {
        a[i] = 1 + hi;
        b[i] = hi;
      } else if (c[i] == -1) {
        a[i] = hi;
        b[i] = 1 + hi;
      } else if (c[i] == 0) {
        a[i] = b[i] = hi;
      } else {
        throw std::invalid_argument("enumerate_good_pairs: c must lie in [-1:1]^n");
      }
    }
    if (is_good_pair(a, b, c, eps_n)) out.emplace_back(a, b);
  }
  return out;
}

int default_eps_n(const SolutionProfile& pi) {
  const int n = pi.n();
  int e = static_cast<int>(std::lround(kEssEps * n));
  e = std::min(e, pi.count(1));
  while (e > 0 && 12 * e >= n) --e;
  return std::max(e, 0);
}

RoundResult ess_round(const Instance& inst, const SolutionProfile& pi, int eps_n, Rng& rng, EssRoundStats* stats) {
  const std::size_t n = inst.n();
  const int ones = static_cast<int>(n / 2);
  const std::uint64_t p_max = good_pair_count(pi, eps_n);
  const std::uint64_t space = sat_mul(binom(static_cast<int>(n), ones), binom(static_cast<int>(n) - ones, eps_n));

  std::uint64_t p = 1, r = 0;
  if (p_max >= 2) {
    p = sample_prime(p_max, rng);
    r = static_cast<std::uint64_t>(uniform_int(rng, 0, static_cast<std::int64_t>(p) - 1));
  }
  const std::uint64_t cap =
      enumeration_cap(n, static_cast<double>(space), static_cast<double>(std::max<std::uint64_t>(p_max, 1)));
  ConstrainedResidueDP dp(inst.x(), ones, eps_n, p);
  ResidueClass S = dp.enumerate(r, cap);

  RoundResult res;
  res.prime = p;
  res.list_size = S.vectors.size();
  if (stats) {
    stats->space = space;
    stats->p_max = p_max;
  }
  if (S.cap_exceeded) {
    res.cap_fired = true;
    return res;
  }

  std::vector<std::pair<std::int64_t, std::size_t>> by_sum(S.vectors.size());
  for (std::size_t k = 0; k < S.vectors.size(); ++k) by_sum[k] = {dot(S.vectors[k], inst.x()), k};
  std::sort(by_sum.begin(), by_sum.end());

  // one certificate scheme per round, shared by every bucket
  std::optional<CertificateScheme> scheme;
  std::optional<AuxCache> aux;
  CompatOptions copts;
  copts.require_distinct = true;

  for (std::size_t lo = 0; lo < by_sum.size();) {
    std::size_t hi = lo + 1;
    while (hi < by_sum.size() && by_sum[hi].first == by_sum[lo].first) ++hi;
    if (hi - lo >= 2) {
      if (!scheme) {
        scheme = build_scheme(static_cast<int>(n), static_cast<double>(eps_n) / static_cast<double>(n), 0, rng);
        aux.emplace(*scheme);
      }
      if (stats) ++stats->buckets;
      std::vector<CoeffVector> bucket;
      bucket.reserve(hi - lo);
      for (std::size_t k = lo; k < hi; ++k) bucket.push_back(S.vectors[by_sum[k].second]);
      auto hit = compatibility_round(*scheme, *aux, bucket, bucket, copts, stats ? &stats->compat : nullptr);
      if (hit) {
        CoeffVector c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = bucket[hit->first][i] - bucket[hit->second][i];
        res.c = std::move(c);
        return res;
      }
    }
    lo = hi;
  }
  return res;
}

SolverReport ess_solve_profile(const Instance& inst, const SolutionProfile& pi, int eps_n, Rng& rng, int repeats) {
  check_ess_set(inst.coeff_set(), "ess_solve_profile");
  check_ess_set(pi.coeff_set(), "ess_solve_profile");
  const int n = static_cast<int>(inst.n());
  if (pi.n() != n) throw std::invalid_argument("ess_solve_profile: profile does not sum to n");
  if (pi.count(1) != pi.count(-1)) throw std::invalid_argument("ess_solve_profile: needs π(1) = π(-1)");
  if (3 * pi.count(0) > n) throw std::invalid_argument("ess_solve_profile: needs π(0) <= n/3");
  if (eps_n < 0 || 12 * eps_n >= n || eps_n > pi.count(1))
    throw std::invalid_argument("ess_solve_profile: needs 0 <= eps_n <= π(1) and 12 eps_n < n");
  SweepTask task;
  task.run = [&](std::size_t, Rng& r) { return ess_round(inst, pi, eps_n, r); };
  return sweep_profiles(inst, 1, repeats, rng(), 1, task);
}

SolverReport solve_ess(const Instance& inst, Rng& rng, const SolveOptions& opts) {
  check_ess_set(inst.coeff_set(), "solve_ess");
  const int n = static_cast<int>(inst.n());
  std::vector<SolutionProfile> profiles;
  std::vector<char> unbalanced;
  std::vector<int> eps_n;
  for (auto& p : enumerate_profiles(n, inst.coeff_set())) {
    if (p.count(0) == n) continue;
    const bool ub = 3 * p.count(0) > n || (p.count(1) + p.count(-1)) % 2 == 1;
    unbalanced.push_back(ub);
    eps_n.push_back(ub || p.count(1) != p.count(-1) ? 0 : default_eps_n(p));
    profiles.push_back(p);
  }

  Instance flipped = inst;
  std::vector<int> signs(inst.n(), 1);
  SweepTask task;
  task.begin_round = [&](int, Rng& r) {
    Rerandomized rr = rerandomize(inst, r);
    flipped = std::move(rr.instance);
    signs = std::move(rr.signs);
  };
  task.run = [&](std::size_t k, Rng& r) {
    const SolutionProfile& p = profiles[k];
    if (unbalanced[k]) return unbalanced_round(inst, p, r);
    if (p.count(1) != p.count(-1)) {
      RoundResult skip;
      skip.skipped = true;
      return skip;
    }
    RoundResult res = ess_round(flipped, p, eps_n[k], r);
    if (res.c) res.c = map_solution(signs, *res.c);
    return res;
  };
  const int rounds = opts.repeats > 0 ? opts.repeats : default_repeats(inst.n());
  SolverReport rep = sweep_profiles(inst, profiles.size(), rounds, rng(), opts.threads, task);
  rep.stats["balanced_profiles"] =
      static_cast<std::int64_t>(std::count(unbalanced.begin(), unbalanced.end(), 0));
  return rep;
}

}  // namespace sbal
