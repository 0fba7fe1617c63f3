#include "sbal/rep_without0.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "sbal/hashing.hpp"
#include "sbal/mitm.hpp"
#include "sbal/rep_with0.hpp"

namespace sbal {

namespace {

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int z = lo; z <= hi; ++z) v.push_back(z);
  return v;
}

// [-a:-b] ∪ [c:e]
std::vector<int> two_runs(int a, int b, int c, int e) {
  auto v = range(-a, -b);
  auto w = range(c, e);
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

struct CatalogRow {
  int d, variant;
  std::vector<int> C1, C2;
  double base;
};

const std::vector<CatalogRow>& catalog() {
  static const std::vector<CatalogRow> rows = {
      {3, 0, {0, 1}, two_runs(3, 2, 1, 2), 2.245},
      {4, 0, {0, 1}, two_runs(4, 2, 1, 3), 2.450},
      {4, 1, range(0, 2), two_runs(4, 3, 1, 2), 2.450},
      {5, 0, {0, 1}, two_runs(5, 2, 1, 4), 2.640},
      {5, 1, range(0, 3), two_runs(5, 4, 1, 2), 2.640},
      {5, 2, range(0, 2), two_runs(5, 3, 1, 3), 2.582},
      {6, 0, {0, 1}, two_runs(6, 2, 1, 5), 2.818},
      {6, 1, range(0, 4), two_runs(6, 5, 1, 2), 2.818},
      {6, 2, range(0, 2), two_runs(6, 3, 1, 4), 2.697},
      {6, 3, range(0, 3), two_runs(6, 4, 1, 3), 2.697},
      {7, 0, {0, 1}, two_runs(7, 2, 1, 6), 2.987},
      {7, 1, range(0, 5), two_runs(7, 6, 1, 2), 2.987},
      {7, 2, range(0, 2), two_runs(7, 3, 1, 5), 2.807},
      {7, 3, range(0, 4), two_runs(7, 5, 1, 3), 2.807},
      {7, 4, range(0, 3), two_runs(7, 4, 1, 4), 2.782},
  };
  return rows;
}

bool all_zero(const CoeffVector& c) {
  return std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
}

}  // namespace

int factor_variant_count(int d) {
  if (d < 3) return 0;
  int k = 0;
  for (const auto& r : catalog()) k += r.d == d;
  return std::max(k, 1);
}

std::vector<int> sumset(const std::vector<int>& C1, const std::vector<int>& C2) {
  std::set<int> s;
  for (int a : C1)
    for (int b : C2) s.insert(a + b);
  return {s.begin(), s.end()};
}

int representations(int z, const std::vector<int>& C1, const std::vector<int>& C2) {
  int k = 0;
  for (int a : C1)
    for (int b : C2) k += a + b == z;
  return k;
}

double balanced_gamma(int d, const std::vector<int>& C1, const std::vector<int>& C2) {
  const CoefficientSet set = CoefficientSet::no_zero(d);
  const double k = set.cardinality();
  double per = 0.0;
  for (int z : set.values()) per += std::log2(static_cast<double>(representations(z, C1, C2))) / k;
  return std::log2(k) / 2.0 - std::log2(static_cast<double>(C1.size() * C2.size())) / 2.0 + per;
}

FactorPair good_factors(int d, int variant) {
  if (d < 3) throw std::invalid_argument("good_factors: d must be at least 3");
  FactorPair f;
  f.d = d;
  f.variant = variant;
  bool found = false;
  for (const auto& r : catalog()) {
    if (r.d == d && r.variant == variant) {
      f.C1 = r.C1;
      f.C2 = r.C2;
      f.table_base = r.base;
      found = true;
    }
  }
  if (!found) {
    if (variant != 0) throw std::invalid_argument("good_factors: unknown variant");
    f.C1 = {0, 1};
    f.C2 = two_runs(d, 2, 1, d - 1);
  }
  if (sumset(f.C1, f.C2) != CoefficientSet::no_zero(d).values())
    throw std::logic_error("good_factors: C1 + C2 does not equal the coefficient set");
  f.gamma = balanced_gamma(d, f.C1, f.C2);
  return f;
}

std::uint64_t count_pairs_shifted(const SolutionProfile& pi, const std::vector<int>& C1,
                                  const std::vector<int>& C2) {
  const auto& vals = pi.coeff_set().values();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const int r = representations(vals[k], C1, C2);
    if (r == 0) throw std::invalid_argument("count_pairs_shifted: coefficient not representable by the factors");
    for (int e = 0; e < pi.counts()[k]; ++e) {
      if (total > UINT64_MAX / static_cast<std::uint64_t>(r)) {
        total = UINT64_MAX;
        break;
      }
      total *= static_cast<std::uint64_t>(r);
    }
  }
  return total;
}

double gamma_for_profile(const SolutionProfile& pi, const FactorPair& f) {
  const double n = pi.n();
  const double k = pi.coeff_set().cardinality();
  double logp = 0.0;
  const auto& vals = pi.coeff_set().values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const int r = representations(vals[i], f.C1, f.C2);
    if (r == 0) throw std::invalid_argument("gamma_for_profile: coefficient not representable by the factors");
    logp += pi.counts()[i] * std::log2(static_cast<double>(r));
  }
  return std::log2(k) / 2.0 - std::log2(static_cast<double>(f.C1.size() * f.C2.size())) / 2.0 + logp / n;
}

RoundResult many_solutions_round(const Instance& inst, double eps, Rng& rng) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("many_solutions_sample: eps must be in (0, 1]");
  const std::size_t n = inst.n();
  const std::size_t h = (n + 1) / 2;
  const auto& vals = inst.coeff_set().values();
  const double k = static_cast<double>(vals.size());
  const double m_real = std::ceil(std::pow(k, n / 2.0) * std::pow(2.0, -eps * n / 2.0));
  if (m_real > static_cast<double>(kListGuard)) throw GuardExceeded("many_solutions_sample: list exceeds guard");
  const std::size_t m = static_cast<std::size_t>(m_real);

  auto draw = [&](std::size_t lo, std::size_t len, std::vector<CoeffVector>& vecs) {
    vecs.assign(m, CoeffVector(len));
    SumList l(m);
    std::uniform_int_distribution<std::size_t> pick(0, vals.size() - 1);
    for (std::size_t t = 0; t < m; ++t) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < len; ++i) {
        vecs[t][i] = vals[pick(rng)];
        s += static_cast<std::int64_t>(vecs[t][i]) * inst[lo + i];
      }
      l[t] = {s, t};
    }
    std::sort(l.begin(), l.end());
    return l;
  };
  std::vector<CoeffVector> A, B;
  SumList L = draw(0, h, A);
  SumList R = draw(h, n - h, B);

  RoundResult res;
  res.list_size = L.size() + R.size();
  meet_each(L, R, Combine::Sum, 0, [&](std::uint64_t a, std::uint64_t b) {
    CoeffVector c(A[a]);
    c.insert(c.end(), B[b].begin(), B[b].end());
    if (all_zero(c)) return false;
    res.c = std::move(c);
    return true;
  });
  return res;
}

SolverReport many_solutions_sample(const Instance& inst, double eps, Rng& rng, int repeats) {
  SweepTask task;
  task.run = [&](std::size_t, Rng& r) { return many_solutions_round(inst, eps, r); };
  return sweep_profiles(inst, 1, repeats, rng(), 1, task);
}

std::uint64_t p_max_without0(const SolutionProfile& pi, const FactorPair& f) {
  const double g = gamma_for_profile(pi, f);
  const double v = static_cast<double>(count_pairs_shifted(pi, f.C1, f.C2)) * std::pow(2.0, -g * pi.n() / 2.0);
  if (!(v < 1.8e19)) return UINT64_MAX;
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::floor(v)));
}

RoundResult balanced_without0_round(const Instance& inst, const SolutionProfile& pi, const FactorPair& f,
                                    Rng& rng) {
  const auto& set = inst.coeff_set();
  if (set.has_zero() || set.d() < 3) throw std::invalid_argument("balanced_sb_without0: needs C = [±d], d >= 3");
  const std::size_t n = inst.n();
  const double gamma = gamma_for_profile(pi, f);
  if (gamma <= 0.0) return many_solutions_round(inst, 1.0 / static_cast<double>(n), rng);

  // many-solutions pre-pass with eps = gamma/2
  RoundResult pre = many_solutions_round(inst, std::min(1.0, gamma / 2.0), rng);
  if (pre.c) return pre;

  const std::uint64_t p_max = p_max_without0(pi, f);
  const std::uint64_t p = sample_prime(p_max, rng);
  const std::uint64_t r = static_cast<std::uint64_t>(uniform_int(rng, 0, static_cast<std::int64_t>(p) - 1));
  const std::size_t h = (n + 1) / 2;

  std::vector<Alphabet> la(n), ra(n);
  for (std::size_t i = 0; i < n; ++i) {
    la[i] = i < h ? f.C1 : f.C2;
    ra[i] = i < h ? f.C2 : f.C1;
  }
  const double space = std::pow(static_cast<double>(f.C1.size()), static_cast<double>(h)) *
                       std::pow(static_cast<double>(f.C2.size()), static_cast<double>(n - h));
  const std::uint64_t cap = enumeration_cap(n, space, static_cast<double>(p_max));

  ResidueDP dl(inst.x(), la, p), dr(inst.x(), ra, p);
  ResidueClass Lr = enumerate_residue_class(dl, r, cap);
  RoundResult res;
  res.prime = p;
  if (Lr.cap_exceeded) {
    res.cap_fired = true;
    res.list_size = Lr.vectors.size();
    return res;
  }
  ResidueClass Rr = enumerate_residue_class(dr, (p - r) % p, cap);
  res.list_size = Lr.vectors.size() + Rr.vectors.size();
  if (Rr.cap_exceeded) {
    res.cap_fired = true;
    return res;
  }
  auto sums = [&](const ResidueClass& S) {
    SumList l(S.vectors.size());
    for (std::size_t k = 0; k < S.vectors.size(); ++k) l[k] = {dot(S.vectors[k], inst.x()), k};
    std::sort(l.begin(), l.end());
    return l;
  };
  SumList L = sums(Lr), R = sums(Rr);
  meet_each(L, R, Combine::Sum, 0, [&](std::uint64_t a, std::uint64_t b) {
    CoeffVector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = Lr.vectors[a][i] + Rr.vectors[b][i];
    res.c = std::move(c);
    return true;
  });
  return res;
}

SolverReport balanced_sb_without0(const Instance& inst, const SolutionProfile& pi, const FactorPair& f, Rng& rng,
                                  int repeats) {
  SweepTask task;
  task.run = [&](std::size_t, Rng& r) { return balanced_without0_round(inst, pi, f, r); };
  return sweep_profiles(inst, 1, repeats, rng(), 1, task);
}

double without0_routing_eps(const CoefficientSet& set) { return 1.0 / (4.0 * set.cardinality()); }

SolverReport solve_without0(const Instance& inst, Rng& rng, const SolveOptions& opts) {
  const auto& set = inst.coeff_set();
  if (set.has_zero()) throw std::invalid_argument("solve_without0: needs C = [±d]");
  if (set.d() < 3) {
    SolverReport rep = classic_mitm(inst);
    rep.notes.push_back("NotImprovable: [+-1] and [+-2] are solved by classic meet-in-the-middle");
    return rep;
  }
  const FactorPair f = good_factors(set.d(), 0);
  const double eps = without0_routing_eps(set);
  std::vector<SolutionProfile> profiles;
  std::vector<char> unbalanced;
  for (auto& p : enumerate_profiles(static_cast<int>(inst.n()), set)) {
    unbalanced.push_back(is_eps_unbalanced(p, eps));
    profiles.push_back(p);
  }
  const int rounds = opts.repeats > 0 ? opts.repeats : default_repeats(inst.n());
  SweepTask task;
  task.run = [&](std::size_t k, Rng& r) {
    return unbalanced[k] ? unbalanced_round(inst, profiles[k], r) : balanced_without0_round(inst, profiles[k], f, r);
  };
  SolverReport rep = sweep_profiles(inst, profiles.size(), rounds, rng(), opts.threads, task);
  rep.stats["balanced_profiles"] =
      static_cast<std::int64_t>(std::count(unbalanced.begin(), unbalanced.end(), 0));
  return rep;
}

}  // namespace sbal
