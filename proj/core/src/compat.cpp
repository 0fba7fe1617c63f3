#include "sbal/compat.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sbal/analysis.hpp"

namespace sbal {

double c_certificate(double eps) {
  if (eps < 0.0 || eps > 0.25) throw std::invalid_argument("c_certificate: eps must lie in [0, 1/4]");
  return (1.0 - eps) * binary_entropy(eps / (1.0 - eps)) + (0.5 + eps) * binary_entropy(4.0 * eps / (1.0 + 2.0 * eps)) -
         binary_entropy(2.0 * eps);
}

double c0_exponent(double eps, double lambda, double K) {
  constexpr double tol = 1e-12;
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("c0_exponent: eps out of range");
  if (lambda < eps - tol || lambda > 0.5 + eps + tol)
    throw std::invalid_argument("c0_exponent: lambda must lie in [eps, 1/2 + eps]");
  const double a = std::clamp((lambda - eps) / (1.0 - eps), 0.0, 1.0);
  const double b = std::clamp(lambda / (0.5 + eps), 0.0, 1.0);
  return binary_entropy(a) * (1.0 - eps) + binary_entropy(b) * (0.5 + eps) - 2.0 * binary_entropy(lambda) + K;
}

double certificate_k_floor(double eps, double lambda) {
  return 2.0 * binary_entropy(lambda) - binary_entropy(std::clamp(2.0 * (lambda - eps), 0.0, 1.0));
}

CertificateScheme build_scheme(int d, double eps, int ell, Rng& rng) {
  if (d < 1 || d > 64) throw std::invalid_argument("build_scheme: d must lie in [1, 64]");
  if (eps < 0.0 || eps > 0.25) throw std::invalid_argument("build_scheme: eps must lie in [0, 1/4]");
  if (ell == 0) ell = d <= 24 ? 1 : 2;
  if (ell < 1 || d % ell != 0) throw std::invalid_argument("build_scheme: ell must divide d");

  CertificateScheme s;
  s.d = d;
  s.ell = ell;
  s.eps = eps;
  const int u = d / ell;
  const int m = static_cast<int>(std::lround(2.0 * eps * u));
  if (eps > 0.0 && m == 0)
    throw std::invalid_argument("build_scheme: blocks too small for eps; use a larger d or ell = 1");
  s.set_size = m;
  s.lambda = static_cast<double>(m) / u;
  if (s.lambda < eps - 1e-12 || s.lambda > 0.5 + eps + 1e-12)
    throw std::invalid_argument("build_scheme: rounded lambda left [eps, 1/2 + eps]");
  s.K = eps == 0.0 ? 0.0 : certificate_k_floor(eps, s.lambda) + std::log2(static_cast<double>(d)) / u;
  s.c0 = c0_exponent(eps, s.lambda, s.K);
  const double count_real = std::ceil(std::exp2(s.K * u));
  if (count_real > 1e7) throw GuardExceeded("build_scheme: certificate family too large");
  const std::size_t count = static_cast<std::size_t>(count_real);

  std::vector<int> coords(d);
  std::iota(coords.begin(), coords.end(), 0);
  std::shuffle(coords.begin(), coords.end(), rng);
  for (int i = 0; i < ell; ++i) {
    std::vector<int> blk(coords.begin() + i * u, coords.begin() + (i + 1) * u);
    std::sort(blk.begin(), blk.end());
    std::uint64_t mask = 0;
    for (int c : blk) mask |= std::uint64_t{1} << c;
    std::vector<Certificate> certs(count);
    std::vector<int> pool = blk;
    for (auto& cert : certs) {
      // partial Fisher-Yates for each side
      for (int side = 0; side < 2; ++side) {
        std::uint64_t bits = 0;
        for (int t = 0; t < m; ++t) {
          std::uniform_int_distribution<int> pick(t, u - 1);
          std::swap(pool[t], pool[pick(rng)]);
          bits |= std::uint64_t{1} << pool[t];
        }
        (side == 0 ? cert.L : cert.R) = bits;
      }
    }
    s.blocks.push_back(std::move(blk));
    s.block_mask.push_back(mask);
    s.pcert.push_back(std::move(certs));
  }
  return s;
}

bool is_a_certificate(const Certificate& cert, std::uint64_t block_mask, std::uint64_t zeros, std::uint64_t twos) {
  return (twos & block_mask & ~cert.L) == 0 && (zeros & cert.R) == 0;
}

bool is_b_certificate(const Certificate& cert, std::uint64_t block_mask, std::uint64_t zeros, std::uint64_t twos) {
  return (twos & block_mask & ~cert.R) == 0 && (zeros & cert.L) == 0;
}

AuxSets build_aux_sets(const CertificateScheme& s, std::uint64_t guard) {
  AuxSets aux;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    const auto& blk = s.blocks[i];
    double patterns = std::pow(3.0, static_cast<double>(blk.size()));
    if (patterns * static_cast<double>(s.pcert[i].size()) > static_cast<double>(guard))
      throw GuardExceeded("build_aux_sets: block too large for exhaustive construction");
    const std::uint64_t np = static_cast<std::uint64_t>(patterns);
    std::vector<std::vector<std::uint32_t>> A(np), B(np);
    for (std::uint64_t code = 0; code < np; ++code) {
      std::uint64_t zeros = 0, twos = 0, rest = code;
      for (int c : blk) {
        const int digit = static_cast<int>(rest % 3);
        rest /= 3;
        if (digit == 0) zeros |= std::uint64_t{1} << c;
        if (digit == 2) twos |= std::uint64_t{1} << c;
      }
      for (std::uint32_t k = 0; k < s.pcert[i].size(); ++k) {
        if (is_a_certificate(s.pcert[i][k], s.block_mask[i], zeros, twos)) A[code].push_back(k);
        if (is_b_certificate(s.pcert[i][k], s.block_mask[i], zeros, twos)) B[code].push_back(k);
      }
    }
    aux.auxA.push_back(std::move(A));
    aux.auxB.push_back(std::move(B));
  }
  return aux;
}

const std::vector<std::uint32_t>& AuxCache::a_side(std::size_t block, std::uint64_t zeros, std::uint64_t twos) {
  const std::uint64_t mask = s_.block_mask[block];
  auto& slot = a_[block];
  const Key key{zeros & mask, twos & mask};
  auto it = slot.find(key);
  if (it != slot.end()) return it->second;
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 0; k < s_.pcert[block].size(); ++k)
    if (is_a_certificate(s_.pcert[block][k], mask, zeros & mask, twos & mask)) out.push_back(k);
  return slot.emplace(key, std::move(out)).first->second;
}

const std::vector<std::uint32_t>& AuxCache::b_side(std::size_t block, std::uint64_t zeros, std::uint64_t twos) {
  const std::uint64_t mask = s_.block_mask[block];
  auto& slot = b_[block];
  const Key key{zeros & mask, twos & mask};
  auto it = slot.find(key);
  if (it != slot.end()) return it->second;
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 0; k < s_.pcert[block].size(); ++k)
    if (is_b_certificate(s_.pcert[block][k], mask, zeros & mask, twos & mask)) out.push_back(k);
  return slot.emplace(key, std::move(out)).first->second;
}

namespace {

struct Masks {
  std::uint64_t zeros = 0, ones = 0, twos = 0;
};

Masks masks_of(const CoeffVector& v, int d, int want_ones, int want_twos) {
  if (static_cast<int>(v.size()) != d) throw std::invalid_argument("compatibility: vector dimension mismatch");
  Masks m;
  for (int i = 0; i < d; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    switch (v[i]) {
      case 0: m.zeros |= bit; break;
      case 1: m.ones |= bit; break;
      case 2: m.twos |= bit; break;
      default: throw std::invalid_argument("compatibility: entries must lie in [0:2]");
    }
  }
  if (std::popcount(m.ones) != want_ones || std::popcount(m.twos) != want_twos)
    throw std::invalid_argument("compatibility: vectors need floor(d/2) ones and eps*d twos");
  return m;
}

bool block_balanced(const CertificateScheme& s, const Masks& m, int ones, int twos) {
  if (s.ell == 1) return true;
  if (ones % s.ell != 0 || twos % s.ell != 0) return false;
  for (auto mask : s.block_mask) {
    if (std::popcount(m.ones & mask) != ones / s.ell || std::popcount(m.twos & mask) != twos / s.ell) return false;
  }
  return true;
}

bool in_band(const CoeffVector& a, const CoeffVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] - b[i] > 1 || a[i] - b[i] < -1) return false;
  return true;
}

// Walk the ell-fold product of per-block lists, calling fn with the tuple
// code; stops after `budget` tuples (returns false) or when fn says so.
template <typename Fn>
bool for_each_tuple(const std::vector<const std::vector<std::uint32_t>*>& lists,
                    const std::vector<std::uint64_t>& radix, std::uint64_t budget, std::uint64_t& emitted, Fn&& fn) {
  const std::size_t ell = lists.size();
  for (auto* l : lists)
    if (l->empty()) return true;
  std::vector<std::size_t> pos(ell, 0);
  while (true) {
    if (emitted >= budget) return false;
    std::uint64_t code = 0;
    for (std::size_t i = ell; i-- > 0;) code = code * radix[i] + (*lists[i])[pos[i]];
    ++emitted;
    if (fn(code)) return true;
    std::size_t i = 0;
    for (; i < ell; ++i) {
      if (++pos[i] < lists[i]->size()) break;
      pos[i] = 0;
    }
    if (i == ell) return true;
  }
}

}  // namespace

std::optional<CompatPair> compatibility_round(const CertificateScheme& s, AuxCache& aux,
                                              const std::vector<CoeffVector>& A, const std::vector<CoeffVector>& B,
                                              const CompatOptions& opts, CompatStats* stats) {
  CompatStats local;
  CompatStats& st = stats ? *stats : local;
  ++st.rounds;
  const int d = s.d;
  const int ones = d / 2;
  const int twos = static_cast<int>(std::lround(s.eps * d));
  const double budget_real = std::ceil(std::exp2(s.c0 * d) * 8.0 * d * d);
  const std::uint64_t budget = budget_real > 1e15 ? std::uint64_t{1'000'000'000'000'000} : static_cast<std::uint64_t>(budget_real);

  std::vector<std::uint64_t> radix;
  for (const auto& p : s.pcert) radix.push_back(p.size());

  std::vector<Masks> ma(A.size()), mb(B.size());
  for (std::size_t i = 0; i < A.size(); ++i) ma[i] = masks_of(A[i], d, ones, twos);
  for (std::size_t j = 0; j < B.size(); ++j) mb[j] = masks_of(B[j], d, ones, twos);

  constexpr std::size_t kKeep = 4;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> candidates;
  std::vector<const std::vector<std::uint32_t>*> lists(s.blocks.size());

  // insertion phase
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (!block_balanced(s, ma[i], ones, twos)) {
      ++st.unbalanced_skips;
      continue;
    }
    for (std::size_t k = 0; k < s.blocks.size(); ++k) lists[k] = &aux.a_side(k, ma[i].zeros, ma[i].twos);
    std::uint64_t emitted = 0;
    bool complete = for_each_tuple(lists, radix, budget, emitted, [&](std::uint64_t code) {
      auto& slot = candidates[code];
      if (slot.size() < kKeep) slot.push_back(i);
      return false;
    });
    st.candidates += emitted;
    if (!complete) ++st.budget_breaks;
  }

  // probing phase, read-only on candidates
  std::optional<CompatPair> hit;
  for (std::size_t j = 0; j < B.size() && !hit; ++j) {
    if (!block_balanced(s, mb[j], ones, twos)) {
      ++st.unbalanced_skips;
      continue;
    }
    for (std::size_t k = 0; k < s.blocks.size(); ++k) lists[k] = &aux.b_side(k, mb[j].zeros, mb[j].twos);
    std::uint64_t emitted = 0;
    bool complete = for_each_tuple(lists, radix, budget, emitted, [&](std::uint64_t code) {
      auto it = candidates.find(code);
      if (it == candidates.end()) return false;
      for (std::size_t i : it->second) {
        if (opts.require_distinct && i == j) continue;
        if (!in_band(A[i], B[j])) {
          ++st.false_hits;
          continue;
        }
        hit = CompatPair{i, j};
        return true;
      }
      return false;
    });
    if (!complete && !hit) ++st.budget_breaks;
  }
  return hit;
}

std::optional<CompatPair> compatibility_test(const std::vector<CoeffVector>& A, const std::vector<CoeffVector>& B,
                                             double eps, Rng& rng, int repeats, const CompatOptions& opts,
                                             CompatStats* stats) {
  if (A.empty() || B.empty()) return std::nullopt;
  const int d = static_cast<int>(A.front().size());
  for (int r = 0; r < repeats; ++r) {
    CertificateScheme s = build_scheme(d, eps, opts.ell, rng);
    AuxCache aux(s);
    if (auto hit = compatibility_round(s, aux, A, B, opts, stats)) return hit;
  }
  return std::nullopt;
}

}  // namespace sbal
