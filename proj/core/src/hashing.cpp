#include "sbal/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbal {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

void sat_add(std::uint64_t& dst, std::uint64_t v, bool& flag) {
  if (dst > UINT64_MAX - v) {
    dst = UINT64_MAX;
    flag = true;
  } else {
    dst += v;
  }
}

}  // namespace

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : small) {
    if (v % p == 0) return v == p;
  }
  std::uint64_t d = v - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : small) {
    std::uint64_t x = powmod(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t sample_prime(std::uint64_t p_max, Rng& rng) {
  if (p_max < 2) throw std::invalid_argument("sample_prime: p_max must be at least 2");
  if (p_max > (UINT64_MAX >> 2)) throw std::invalid_argument("sample_prime: p_max too large");
  std::uniform_int_distribution<std::uint64_t> dist(p_max, 2 * p_max);
  // Bertrand guarantees a prime in range; the density is ~1/ln p.
  while (true) {
    std::uint64_t v = dist(rng);
    if (is_prime(v)) return v;
  }
}

std::uint64_t mod_of(std::int64_t v, std::uint64_t p) {
  const std::int64_t pp = static_cast<std::int64_t>(p);
  std::int64_t r = v % pp;
  if (r < 0) r += pp;
  return static_cast<std::uint64_t>(r);
}

ResidueDP::ResidueDP(std::span<const std::int64_t> x, std::vector<Alphabet> alphabets, std::uint64_t p,
                     std::uint64_t guard)
    : p_(p), alphabets_(std::move(alphabets)) {
  if (p < 1) throw std::invalid_argument("residue dp: modulus must be positive");
  if (alphabets_.size() != x.size()) throw std::invalid_argument("residue dp: one alphabet per entry");
  const std::size_t n = x.size();
  if (p > guard / (n + 1)) throw GuardExceeded("residue dp: table exceeds memory guard");
  xmod_.resize(n);
  for (std::size_t i = 0; i < n; ++i) xmod_[i] = mod_of(x[i], p);
  table_.assign((n + 1) * p, 0);
  table_[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint64_t* prev = &table_[(i - 1) * p];
    std::uint64_t* cur = &table_[i * p];
    for (int v : alphabets_[i - 1]) {
      const std::uint64_t shift = mulmod(mod_of(v, p), xmod_[i - 1], p);
      for (std::uint64_t j = 0; j < p; ++j) {
        if (prev[j] == 0) continue;
        std::uint64_t t = j + shift;
        if (t >= p) t -= p;
        sat_add(cur[t], prev[j], saturated_);
      }
    }
  }
}

ResidueDP build_dp(std::span<const std::int64_t> x, std::vector<Alphabet> alphabets, std::uint64_t p,
                   std::uint64_t guard) {
  return ResidueDP(x, std::move(alphabets), p, guard);
}

ResidueClass enumerate_residue_class(const ResidueDP& dp, std::uint64_t r, std::uint64_t cap) {
  const std::uint64_t p = dp.p();
  if (r >= p) throw std::invalid_argument("enumerate_residue_class: residue out of range");
  const std::size_t n = dp.n();
  ResidueClass out;
  out.cap_exceeded = dp.count(n, r) > cap;
  if (dp.count(n, r) == 0 || cap == 0) return out;

  CoeffVector v(n);
  // Every nonzero cell reached leads to at least one output, so the walk
  // is linear in the number of vectors emitted.
  auto rec = [&](auto& self, std::size_t i, std::uint64_t res) -> bool {
    if (i == 0) {
      out.vectors.push_back(v);
      return out.vectors.size() >= cap;
    }
    for (int a : dp.alphabets()[i - 1]) {
      const std::uint64_t shift = mulmod(mod_of(a, p), dp.x_mod(i - 1), p);
      const std::uint64_t prev = res >= shift ? res - shift : res + p - shift;
      if (dp.count(i - 1, prev) == 0) continue;
      v[i - 1] = a;
      if (self(self, i - 1, prev)) return true;
    }
    return false;
  };
  rec(rec, n, r);
  return out;
}

ConstrainedResidueDP::ConstrainedResidueDP(std::span<const std::int64_t> x, int ones, int twos, std::uint64_t p,
                                           std::uint64_t guard)
    : n_(x.size()), ones_(ones), twos_(twos), p_(p) {
  if (p < 1) throw std::invalid_argument("constrained dp: modulus must be positive");
  if (ones < 0 || twos < 0 || static_cast<std::size_t>(ones + twos) > n_)
    throw std::invalid_argument("constrained dp: infeasible count constraints");
  const std::uint64_t layers = (n_ + 1) * static_cast<std::uint64_t>(ones + 1) * static_cast<std::uint64_t>(twos + 1);
  if (p > guard / layers) throw GuardExceeded("constrained dp: table exceeds memory guard");
  xmod_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) xmod_[i] = mod_of(x[i], p);
  table_.assign(layers * p, 0);
  table_[cell(0, 0, 0)] = 1;
  bool sat = false;
  for (std::size_t i = 1; i <= n_; ++i) {
    const std::uint64_t s1 = xmod_[i - 1], s2 = mulmod(2, xmod_[i - 1], p);
    for (int o = 0; o <= ones; ++o)
      for (int t = 0; t <= twos; ++t) {
        const std::uint64_t* prev = &table_[cell(i - 1, o, t)];
        for (int v = 0; v <= 2; ++v) {
          const int o2 = o + (v == 1), t2 = t + (v == 2);
          if (o2 > ones || t2 > twos) continue;
          const std::uint64_t shift = v == 0 ? 0 : (v == 1 ? s1 : s2);
          std::uint64_t* cur = &table_[cell(i, o2, t2)];
          for (std::uint64_t j = 0; j < p; ++j) {
            if (prev[j] == 0) continue;
            std::uint64_t k = j + shift;
            if (k >= p) k -= p;
            sat_add(cur[k], prev[j], sat);
          }
        }
      }
  }
}

ResidueClass ConstrainedResidueDP::enumerate(std::uint64_t r, std::uint64_t cap) const {
  if (r >= p_) throw std::invalid_argument("constrained dp: residue out of range");
  ResidueClass out;
  const std::uint64_t total = count(n_, ones_, twos_, r);
  out.cap_exceeded = total > cap;
  if (total == 0 || cap == 0) return out;
  CoeffVector v(n_);
  auto rec = [&](auto& self, std::size_t i, int o, int t, std::uint64_t res) -> bool {
    if (i == 0) {
      out.vectors.push_back(v);
      return out.vectors.size() >= cap;
    }
    for (int a = 0; a <= 2; ++a) {
      const int o2 = o - (a == 1), t2 = t - (a == 2);
      if (o2 < 0 || t2 < 0) continue;
      const std::uint64_t shift = mulmod(static_cast<std::uint64_t>(a), xmod_[i - 1], p_);
      const std::uint64_t prev = res >= shift ? res - shift : res + p_ - shift;
      if (count(i - 1, o2, t2, prev) == 0) continue;
      v[i - 1] = a;
      if (self(self, i - 1, o2, t2, prev)) return true;
    }
    return false;
  };
  rec(rec, n_, ones_, twos_, r);
  return out;
}

ResidueClassStats residue_class_stats(std::span<const std::int64_t> G, std::span<const std::int64_t> Y,
                                      std::uint64_t p, std::uint64_t p_max, const GoodResidueOptions& opts) {
  if (p < 1 || p_max < 1) throw std::invalid_argument("residue stats: modulus must be positive");
  if (p > kDpCellGuard) throw GuardExceeded("residue stats: modulus too large");
  const double n = opts.n > 0 ? opts.n : std::max(1.0, std::ceil(std::log2(std::max<std::size_t>(G.size(), 2))));
  const double g_floor = static_cast<double>(G.size()) / (4.0 * static_cast<double>(p_max));
  const double y_ceiling = static_cast<double>(Y.size()) / static_cast<double>(p_max) * std::pow(n, opts.c + 1.0);

  std::vector<std::uint64_t> gc(p, 0), yc(p, 0), distinct(p, 0);
  for (auto g : G) ++gc[mod_of(g, p)];
  for (auto y : Y) ++yc[mod_of(y, p)];
  std::vector<std::int64_t> uniq(G.begin(), G.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  for (auto g : uniq) ++distinct[mod_of(g, p)];

  ResidueClassStats st;
  st.prime = p;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (static_cast<double>(gc[r]) >= g_floor && static_cast<double>(yc[r]) <= y_ceiling) ++st.good_residues;
    st.colliding_pairs += distinct[r] * (distinct[r] - (distinct[r] > 0 ? 1 : 0));
  }
  st.good_fraction = static_cast<double>(st.good_residues) / static_cast<double>(p);
  return st;
}

GoodResidueReport good_residue_fraction(std::span<const std::int64_t> G, std::span<const std::int64_t> Y,
                                        std::uint64_t p_max, int trials, Rng& rng, const GoodResidueOptions& opts) {
  GoodResidueReport rep;
  std::vector<double> fr;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t p = sample_prime(p_max, rng);
    rep.trials.push_back(residue_class_stats(G, Y, p, p_max, opts));
    fr.push_back(rep.trials.back().good_fraction);
  }
  if (!fr.empty()) {
    std::sort(fr.begin(), fr.end());
    const std::size_t m = fr.size();
    rep.median_fraction = m % 2 ? fr[m / 2] : 0.5 * (fr[m / 2 - 1] + fr[m / 2]);
  }
  return rep;
}

}  // namespace sbal
