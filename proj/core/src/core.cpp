#include "sbal/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace sbal {

CoefficientSet::CoefficientSet(Kind kind, int d) : kind_(kind), d_(d) {
  if (d < 1 || d > kMaxD) throw std::invalid_argument("coefficient set: d must be in [1, 64]");
  for (int z = -d; z <= d; ++z) {
    if (z == 0 && kind == Kind::NoZero) continue;
    values_.push_back(z);
  }
}

bool CoefficientSet::contains(int z) const {
  if (z < -d_ || z > d_) return false;
  return z != 0 || has_zero();
}

int CoefficientSet::index_of(int z) const {
  if (!contains(z)) return -1;
  int idx = z + d_;
  if (!has_zero() && z > 0) --idx;
  return idx;
}

std::string CoefficientSet::name() const {
  std::ostringstream os;
  if (has_zero())
    os << "[-" << d_ << ":" << d_ << "]";
  else
    os << "[+-" << d_ << "]";
  return os.str();
}

std::int64_t Instance::magnitude_bound(int d, std::size_t n) {
  const std::int64_t lim = std::int64_t{1} << 62;
  return lim / (static_cast<std::int64_t>(d) * static_cast<std::int64_t>(n));
}

Instance::Instance(std::vector<std::int64_t> x, CoefficientSet coeff_set)
    : x_(std::move(x)), set_(std::move(coeff_set)) {
  if (x_.empty()) throw std::invalid_argument("instance: n must be at least 1");
  const std::int64_t bound = magnitude_bound(set_.d(), x_.size());
  for (auto v : x_) {
    if (v > bound || v < -bound)
      throw std::invalid_argument("instance: entry exceeds overflow-safe magnitude bound");
  }
}

SolutionProfile::SolutionProfile(CoefficientSet set, std::vector<int> counts)
    : set_(std::move(set)), counts_(std::move(counts)) {
  if (static_cast<int>(counts_.size()) != set_.cardinality())
    throw std::invalid_argument("profile: count vector does not match coefficient set");
  for (int k : counts_) {
    if (k < 0) throw std::invalid_argument("profile: negative count");
    n_ += k;
  }
}

SolutionProfile SolutionProfile::from_map(CoefficientSet set, const std::map<int, int>& counts) {
  std::vector<int> v(set.cardinality(), 0);
  for (auto [z, k] : counts) {
    int idx = set.index_of(z);
    if (idx < 0) throw std::invalid_argument("profile: coefficient outside the set");
    v[idx] = k;
  }
  return SolutionProfile(std::move(set), std::move(v));
}

int SolutionProfile::count(int z) const {
  int idx = set_.index_of(z);
  return idx < 0 ? 0 : counts_[idx];
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Solved: return "Solved";
    case Outcome::NoSolutionFound: return "NoSolutionFound";
    case Outcome::RetryableFailure: return "RetryableFailure";
  }
  return "?";
}

SolverReport SolverReport::solved_with(const Instance& inst, CoeffVector c) {
  if (!is_solution(inst, c)) throw std::logic_error("solver produced an invalid solution");
  SolverReport r;
  r.outcome = Outcome::Solved;
  r.solution = Solution{canonical_sign(std::move(c))};
  return r;
}

std::int64_t dot(std::span<const int> c, std::span<const std::int64_t> x) {
  if (c.size() != x.size()) throw std::invalid_argument("dot: length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += static_cast<std::int64_t>(c[i]) * x[i];
  return s;
}

bool is_solution(const Instance& inst, std::span<const int> c) {
  if (c.size() != inst.n()) throw std::invalid_argument("is_solution: length mismatch");
  bool nonzero = false;
  for (int v : c) {
    if (!inst.coeff_set().contains(v)) return false;
    nonzero |= v != 0;
  }
  // Entries can come from outside the set only if we returned above, so the
  // instance bound keeps this sum inside 64 bits.
  return nonzero && dot(c, inst.x()) == 0;
}

SolutionProfile profile_of(std::span<const int> c, const CoefficientSet& set) {
  std::vector<int> counts(set.cardinality(), 0);
  for (int v : c) {
    int idx = set.index_of(v);
    if (idx < 0) throw std::invalid_argument("profile_of: entry outside the coefficient set");
    ++counts[idx];
  }
  return SolutionProfile(set, std::move(counts));
}

bool is_eps_unbalanced(const SolutionProfile& pi, double eps) {
  const double n = pi.n();
  const double mean = n / pi.coeff_set().cardinality();
  for (int k : pi.counts()) {
    if (std::abs(k - mean) > eps * n) return true;
  }
  return false;
}

void for_each_profile(int n, const CoefficientSet& set,
                      const std::function<void(const SolutionProfile&)>& fn) {
  if (n < 1) throw std::invalid_argument("enumerate_profiles: n must be at least 1");
  const int k = set.cardinality();
  std::vector<int> counts(k, 0);
  // counts[0..k-2] free, last one takes the remainder
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      counts[pos] = left;
      fn(SolutionProfile(set, counts));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      counts[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, n);
}

std::vector<SolutionProfile> enumerate_profiles(int n, const CoefficientSet& set, ProfileFilter filter,
                                                double eps) {
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("enumerate_profiles: eps out of range");
  std::vector<SolutionProfile> out;
  for_each_profile(n, set, [&](const SolutionProfile& p) {
    bool keep = true;
    if (filter == ProfileFilter::EpsUnbalanced) keep = is_eps_unbalanced(p, eps);
    if (filter == ProfileFilter::EpsBalanced) keep = !is_eps_unbalanced(p, eps);
    if (keep) out.push_back(p);
  });
  return out;
}

CoeffVector canonical_sign(CoeffVector c) {
  for (int v : c) {
    if (v == 0) continue;
    if (v < 0)
      for (int& w : c) w = -w;
    break;
  }
  return c;
}

Instance apply_signs(const Instance& inst, std::span<const int> signs) {
  if (signs.size() != inst.n()) throw std::invalid_argument("apply_signs: length mismatch");
  std::vector<std::int64_t> x(inst.x().begin(), inst.x().end());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= signs[i];
  return Instance(std::move(x), inst.coeff_set());
}

Rerandomized rerandomize(const Instance& inst, Rng& rng) {
  std::vector<int> signs(inst.n());
  for (auto& s : signs) s = (rng() & 1) ? 1 : -1;
  Instance flipped = apply_signs(inst, signs);
  return {std::move(flipped), std::move(signs)};
}

CoeffVector map_solution(std::span<const int> signs, std::span<const int> c) {
  if (signs.size() != c.size()) throw std::invalid_argument("map_solution: length mismatch");
  CoeffVector out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = signs[i] * c[i];
  return out;
}

namespace {

std::int64_t draw_nonzero(Rng& rng, std::int64_t W) {
  // uniform on [-W, W] \ {0}
  std::int64_t v = uniform_int(rng, 1, 2 * W);
  return v <= W ? v - W - 1 : v - W;
}

}  // namespace

GeneratedInstance gen_instance(int n, const CoefficientSet& set, const GenMode& mode, Rng& rng) {
  if (n < 1) throw std::invalid_argument("gen_instance: n must be at least 1");

  if (const auto* u = std::get_if<UniformRange>(&mode)) {
    if (u->W < 1) throw std::invalid_argument("gen_instance: W must be at least 1");
    if (u->W > Instance::magnitude_bound(set.d(), n))
      throw std::invalid_argument("gen_instance: W violates the overflow bound");
    std::vector<std::int64_t> x(n);
    for (auto& v : x) v = draw_nonzero(rng, u->W);
    return {Instance(std::move(x), set), std::nullopt};
  }

  const auto& pl = std::get<Planted>(mode);
  const std::int64_t W = pl.W;
  if (W < 1) throw std::invalid_argument("gen_instance: W must be at least 1");
  if (W > Instance::magnitude_bound(set.d(), n))
    throw std::invalid_argument("gen_instance: W violates the overflow bound");
  if (!(pl.profile.coeff_set() == set)) throw std::invalid_argument("gen_instance: profile over a different set");
  if (pl.profile.n() != n) throw std::invalid_argument("gen_instance: profile does not sum to n");
  if (n == 1) throw std::invalid_argument("gen_instance: cannot plant a solution with n = 1");
  if (pl.profile.count(0) == n) throw std::invalid_argument("gen_instance: planted profile is all zero");

  CoeffVector base;
  for (std::size_t k = 0; k < set.values().size(); ++k)
    base.insert(base.end(), pl.profile.counts()[k], set.values()[k]);

  for (int attempt = 0; attempt < 10000; ++attempt) {
    CoeffVector c = base;
    std::shuffle(c.begin(), c.end(), rng);
    auto big = std::max_element(c.begin(), c.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
    std::iter_swap(big, c.end() - 1);

    std::vector<std::int64_t> x(n);
    std::int64_t partial = 0;
    for (int i = 0; i + 1 < n; ++i) {
      x[i] = draw_nonzero(rng, W);
      partial += static_cast<std::int64_t>(c[i]) * x[i];
    }
    const int last = c[n - 1];
    if (partial % last != 0) continue;
    std::int64_t xn = -partial / last;
    if (xn == 0 || xn > W || xn < -W) continue;
    x[n - 1] = xn;

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::int64_t> xs(n);
    CoeffVector cs(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = x[perm[i]];
      cs[i] = c[perm[i]];
    }
    Instance inst(std::move(xs), set);
    return {std::move(inst), canonical_sign(std::move(cs))};
  }
  throw std::runtime_error("gen_instance: planting failed after 10000 attempts");
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b * 0xd1b54a32d192ed03ULL));
  return Rng(h);
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace sbal
