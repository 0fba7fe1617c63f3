#include "sbal/mitm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sbal {

namespace {

bool sorted_by_sum(const SumList& l) {
  return std::is_sorted(l.begin(), l.end(), [](const SumEntry& a, const SumEntry& b) { return a.sum < b.sum; });
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

bool all_zero(const CoeffVector& c) {
  return std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
}

}  // namespace

void meet_each(const SumList& L, const SumList& R, Combine combine, std::int64_t target,
               const std::function<bool(std::uint64_t, std::uint64_t)>& visit) {
  if (!sorted_by_sum(L) || !sorted_by_sum(R)) throw std::invalid_argument("meet: input lists must be sorted by sum");
  const std::size_t nl = L.size(), nr = R.size();
  // key of the j-th R entry in ascending order
  auto rpos = [&](std::size_t j) { return combine == Combine::Difference ? j : nr - 1 - j; };
  auto rkey = [&](std::size_t j) {
    const std::int64_t s = R[rpos(j)].sum;
    return combine == Combine::Difference ? s + target : target - s;
  };

  std::size_t i = 0, j = 0;
  while (i < nl && j < nr) {
    const std::int64_t kl = L[i].sum, kr = rkey(j);
    if (kl < kr) {
      ++i;
    } else if (kl > kr) {
      ++j;
    } else {
      std::size_t i2 = i, j2 = j;
      while (i2 < nl && L[i2].sum == kl) ++i2;
      while (j2 < nr && rkey(j2) == kr) ++j2;
      for (std::size_t a = i; a < i2; ++a)
        for (std::size_t b = j; b < j2; ++b)
          if (visit(L[a].code, R[rpos(b)].code)) return;
      i = i2;
      j = j2;
    }
  }
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> meet(const SumList& L, const SumList& R, Combine combine,
                                                            std::int64_t target) {
  std::optional<std::pair<std::uint64_t, std::uint64_t>> hit;
  meet_each(L, R, combine, target, [&](std::uint64_t a, std::uint64_t b) {
    hit = std::make_pair(a, b);
    return true;
  });
  return hit;
}

SolverReport classic_mitm(const Instance& inst, std::uint64_t guard) {
  const auto& vals = inst.coeff_set().values();
  const std::uint64_t k = vals.size();
  const std::size_t n = inst.n();
  const std::size_t h = (n + 1) / 2;

  auto build = [&](std::size_t lo, std::size_t len) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < len; ++i) {
      total = sat_mul(total, k);
      if (total > guard) throw GuardExceeded("classic_mitm: half list exceeds guard");
    }
    SumList list(total);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t rest = code;
      std::int64_t s = 0;
      for (std::size_t i = 0; i < len; ++i) {
        s += static_cast<std::int64_t>(vals[rest % k]) * inst[lo + i];
        rest /= k;
      }
      list[code] = {s, code};
    }
    std::sort(list.begin(), list.end());
    return list;
  };
  auto decode = [&](std::uint64_t code, std::size_t len, CoeffVector& out, std::size_t lo) {
    for (std::size_t i = 0; i < len; ++i) {
      out[lo + i] = vals[code % k];
      code /= k;
    }
  };

  SumList L = build(0, h);
  SumList R = build(h, n - h);
  std::optional<CoeffVector> found;
  meet_each(L, R, Combine::Sum, 0, [&](std::uint64_t a, std::uint64_t b) {
    CoeffVector c(n);
    decode(a, h, c, 0);
    decode(b, n - h, c, h);
    if (all_zero(c)) return false;
    found = std::move(c);
    return true;
  });
  SolverReport rep = found ? SolverReport::solved_with(inst, *found) : SolverReport::no_solution();
  rep.stats["list_total"] = static_cast<std::int64_t>(L.size() + R.size());
  rep.stats["rounds"] = 1;
  return rep;
}

std::pair<std::vector<int>, std::vector<int>> split_half_counts(const SolutionProfile& pi) {
  const int n = pi.n();
  const int h = (n + 1) / 2;
  std::vector<int> a(pi.counts().size()), b(pi.counts().size());
  int used = 0;
  for (std::size_t z = 0; z < a.size(); ++z) {
    const int want = (pi.counts()[z] + 1) / 2;
    a[z] = std::min(want, h - used);
    used += a[z];
    b[z] = pi.counts()[z] - a[z];
  }
  return {a, b};
}

std::uint64_t half_list_size(const SolutionProfile& pi, Half half) {
  auto [a, b] = split_half_counts(pi);
  const auto& cnt = half == Half::A ? a : b;
  // multinomial via sequential binomials
  std::uint64_t total = 1;
  int placed = 0;
  for (int k : cnt) {
    for (int j = 1; j <= k; ++j) {
      ++placed;
      // total *= placed / j, exact at every step
      unsigned __int128 t = static_cast<unsigned __int128>(total) * static_cast<unsigned>(placed);
      t /= static_cast<unsigned>(j);
      if (t > UINT64_MAX) return UINT64_MAX;
      total = static_cast<std::uint64_t>(t);
    }
  }
  return total;
}

std::vector<CoeffVector> enumerate_S(const CoefficientSet& set, const SolutionProfile& pi, Half half,
                                     std::uint64_t guard) {
  if (!(pi.coeff_set() == set)) throw std::invalid_argument("enumerate_S: profile over a different set");
  if (half_list_size(pi, half) > guard) throw GuardExceeded("enumerate_S: half list exceeds guard");
  auto [a, b] = split_half_counts(pi);
  const auto& cnt = half == Half::A ? a : b;
  CoeffVector v;
  for (std::size_t z = 0; z < cnt.size(); ++z) v.insert(v.end(), cnt[z], set.values()[z]);
  std::vector<CoeffVector> out;
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

RoundResult unbalanced_round(const Instance& inst, const SolutionProfile& pi, Rng& rng) {
  const std::size_t n = inst.n();
  if (static_cast<std::size_t>(pi.n()) != n) throw std::invalid_argument("unbalanced_sb: profile does not sum to n");
  const std::size_t h = (n + 1) / 2;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  auto SA = enumerate_S(inst.coeff_set(), pi, Half::A);
  auto SB = enumerate_S(inst.coeff_set(), pi, Half::B);
  auto sums = [&](const std::vector<CoeffVector>& S, std::size_t off) {
    SumList l(S.size());
    for (std::size_t k = 0; k < S.size(); ++k) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < S[k].size(); ++i) s += static_cast<std::int64_t>(S[k][i]) * inst[perm[off + i]];
      l[k] = {s, k};
    }
    std::sort(l.begin(), l.end());
    return l;
  };
  SumList L = sums(SA, 0), R = sums(SB, h);

  RoundResult res;
  res.list_size = L.size() + R.size();
  meet_each(L, R, Combine::Sum, 0, [&](std::uint64_t a, std::uint64_t b) {
    CoeffVector c(n);
    for (std::size_t i = 0; i < h; ++i) c[perm[i]] = SA[a][i];
    for (std::size_t i = h; i < n; ++i) c[perm[i]] = SB[b][i - h];
    if (all_zero(c)) return false;
    res.c = std::move(c);
    return true;
  });
  return res;
}

SolverReport unbalanced_sb(const Instance& inst, const SolutionProfile& pi, Rng& rng, int repeats) {
  SweepTask task;
  task.run = [&](std::size_t, Rng& r) { return unbalanced_round(inst, pi, r); };
  return sweep_profiles(inst, 1, repeats, rng(), 1, task);
}

SolverReport solve_unbalanced(const Instance& inst, Rng& rng, const SolveOptions& opts,
                              const std::vector<SolutionProfile>* only) {
  std::vector<SolutionProfile> profiles;
  if (only) {
    profiles = *only;
  } else {
    for (auto& p : enumerate_profiles(static_cast<int>(inst.n()), inst.coeff_set()))
      if (p.count(0) != p.n()) profiles.push_back(p);
  }
  const int rounds = opts.repeats > 0 ? opts.repeats : default_repeats(inst.n());
  SweepTask task;
  task.run = [&](std::size_t k, Rng& r) { return unbalanced_round(inst, profiles[k], r); };
  return sweep_profiles(inst, profiles.size(), rounds, rng(), opts.threads, task);
}

}  // namespace sbal
