#include "sbal/oracle.hpp"

#include <stdexcept>

namespace sbal {

namespace {

void check_guard(std::uint64_t base, std::size_t n, std::uint64_t guard, const char* what) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (base != 0 && total > guard / base) throw GuardExceeded(std::string(what) + ": search space exceeds guard");
    total *= base;
  }
  if (total > guard) throw GuardExceeded(std::string(what) + ": search space exceeds guard");
}

bool first_nonzero_positive(const CoeffVector& c) {
  for (int v : c)
    if (v != 0) return v > 0;
  return false;
}

}  // namespace

void for_each_solution(const Instance& inst, const std::function<bool(const CoeffVector&)>& fn,
                       std::uint64_t guard) {
  const auto& vals = inst.coeff_set().values();
  const std::size_t n = inst.n();
  const int k = static_cast<int>(vals.size());
  check_guard(static_cast<std::uint64_t>(k), n, guard, "oracle");

  std::vector<int> idx(n, 0);
  CoeffVector c(n, vals[0]);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += static_cast<std::int64_t>(vals[0]) * inst[i];

  while (true) {
    if (sum == 0) {
      bool nonzero = false;
      for (int v : c) nonzero |= v != 0;
      if (nonzero && !fn(c)) return;
    }
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (idx[i] + 1 < k) {
        sum += static_cast<std::int64_t>(vals[idx[i] + 1] - vals[idx[i]]) * inst[i];
        ++idx[i];
        c[i] = vals[idx[i]];
        break;
      }
      sum += static_cast<std::int64_t>(vals[0] - vals[idx[i]]) * inst[i];
      idx[i] = 0;
      c[i] = vals[0];
      if (i == 0) return;
    }
  }
}

SolverReport brute_force_solve(const Instance& inst, std::uint64_t guard) {
  std::optional<CoeffVector> found;
  for_each_solution(inst, [&](const CoeffVector& c) {
    if (!first_nonzero_positive(c)) return true;
    found = c;
    return false;
  }, guard);
  if (!found) return SolverReport::no_solution();
  return SolverReport::solved_with(inst, *found);
}

std::uint64_t count_solutions(const Instance& inst, std::uint64_t guard) {
  std::uint64_t count = 0;
  for_each_solution(inst, [&](const CoeffVector&) {
    ++count;
    return true;
  }, guard);
  return count;
}

std::optional<Solution> min_support_solution(const Instance& inst, std::uint64_t guard) {
  std::optional<CoeffVector> best;
  int best_zeros = -1;
  for_each_solution(inst, [&](const CoeffVector& c) {
    if (!first_nonzero_positive(c)) return true;
    int zeros = 0;
    for (int v : c) zeros += v == 0;
    if (zeros > best_zeros) {
      best_zeros = zeros;
      best = c;
    }
    return true;
  }, guard);
  if (!best) return std::nullopt;
  return Solution{*best};
}

PairFamily enumerate_pairs(std::span<const int> c, const std::vector<Alphabet>& left,
                           const std::vector<Alphabet>& right, Combine combine, std::uint64_t guard) {
  const std::size_t n = c.size();
  if (left.size() != n || right.size() != n) throw std::invalid_argument("enumerate_pairs: alphabet count mismatch");
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t w = left[i].size() * right[i].size();
    if (w != 0 && space > guard / w) throw GuardExceeded("enumerate_pairs: product exceeds guard");
    space *= w;
  }

  // Per-index options first, then the cartesian product.
  std::vector<std::vector<std::pair<int, int>>> options(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int a : left[i])
      for (int b : right[i]) {
        const int v = combine == Combine::Difference ? a - b : a + b;
        if (v == c[i]) options[i].emplace_back(a, b);
      }
  }
  PairFamily fam;
  for (const auto& o : options)
    if (o.empty()) return fam;

  std::vector<std::size_t> pos(n, 0);
  while (true) {
    CoeffVector a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) std::tie(a[i], b[i]) = options[i][pos[i]];
    fam.pairs.emplace_back(std::move(a), std::move(b));
    std::size_t i = n;
    bool done = true;
    while (i > 0) {
      --i;
      if (++pos[i] < options[i].size()) {
        done = false;
        break;
      }
      pos[i] = 0;
    }
    if (done) break;
  }
  return fam;
}

std::optional<std::pair<std::size_t, std::size_t>> brute_force_compatible_pair(
    const std::vector<CoeffVector>& A, const std::vector<CoeffVector>& B, const CoefficientSet& band) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (A[i].size() != B[j].size()) throw std::invalid_argument("compatible pair: dimension mismatch");
      bool ok = true;
      for (std::size_t t = 0; t < A[i].size() && ok; ++t) ok = band.contains(A[i][t] - B[j][t]);
      if (ok) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace sbal
