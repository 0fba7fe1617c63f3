#pragma once

// Prime sampling and residue-class dynamic programs.

#include <cstdint>
#include <span>
#include <vector>

#include "sbal/core.hpp"

namespace sbal {

using Alphabet = std::vector<int>;

inline constexpr std::uint64_t kDpCellGuard = std::uint64_t{1} << 26;

/// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t v);

/// Rejection sampling of a prime in [p_max, 2 p_max].
std::uint64_t sample_prime(std::uint64_t p_max, Rng& rng);

std::uint64_t mod_of(std::int64_t v, std::uint64_t p);

/// table[i][j]: prefixes over alphabets 1..i whose weighted sum is j mod p.
class ResidueDP {
 public:
  ResidueDP(std::span<const std::int64_t> x, std::vector<Alphabet> alphabets, std::uint64_t p,
            std::uint64_t guard = kDpCellGuard);

  std::uint64_t p() const { return p_; }
  std::size_t n() const { return alphabets_.size(); }
  std::uint64_t count(std::size_t i, std::uint64_t r) const { return table_[i * p_ + r]; }
  bool saturated() const { return saturated_; }
  const std::vector<Alphabet>& alphabets() const { return alphabets_; }
  std::uint64_t x_mod(std::size_t i) const { return xmod_[i]; }

 private:
  std::uint64_t p_;
  std::vector<Alphabet> alphabets_;
  std::vector<std::uint64_t> xmod_;
  std::vector<std::uint64_t> table_;
  bool saturated_ = false;
};

ResidueDP build_dp(std::span<const std::int64_t> x, std::vector<Alphabet> alphabets, std::uint64_t p,
                   std::uint64_t guard = kDpCellGuard);

struct ResidueClass {
  std::vector<CoeffVector> vectors;
  bool cap_exceeded = false;
};

/// Backtracks from (n, r). Emits at most `cap` vectors; cap_exceeded is set
/// when the class holds more than that.
ResidueClass enumerate_residue_class(const ResidueDP& dp, std::uint64_t r, std::uint64_t cap);

/// Same DP over [0:2]^n restricted to vectors with exactly `ones` ones and
/// `twos` twos.
class ConstrainedResidueDP {
 public:
  ConstrainedResidueDP(std::span<const std::int64_t> x, int ones, int twos, std::uint64_t p,
                       std::uint64_t guard = kDpCellGuard);

  std::uint64_t p() const { return p_; }
  std::size_t n() const { return n_; }
  // vectors over the first i entries using exactly o ones and t twos
  std::uint64_t count(std::size_t i, int o, int t, std::uint64_t r) const { return table_[cell(i, o, t) + r]; }
  int ones() const { return ones_; }
  int twos() const { return twos_; }

  ResidueClass enumerate(std::uint64_t r, std::uint64_t cap) const;

 private:
  std::size_t cell(std::size_t i, int o, int t) const {
    return ((i * (ones_ + 1) + o) * (twos_ + 1) + t) * p_;
  }
  std::size_t n_;
  int ones_, twos_;
  std::uint64_t p_;
  std::vector<std::uint64_t> xmod_;
  std::vector<std::uint64_t> table_;
};

struct GoodResidueOptions {
  int n = 0;         // 0: ceil(log2 |G|)
  double c = 1.0;
};

struct ResidueClassStats {
  std::uint64_t prime = 0;
  std::uint64_t good_residues = 0;
  double good_fraction = 0.0;     // |R| / p
  std::uint64_t colliding_pairs = 0;  // ordered pairs of distinct G values sharing a residue
};

ResidueClassStats residue_class_stats(std::span<const std::int64_t> G, std::span<const std::int64_t> Y,
                                      std::uint64_t p, std::uint64_t p_max,
                                      const GoodResidueOptions& opts = {});

struct GoodResidueReport {
  std::vector<ResidueClassStats> trials;
  double median_fraction = 0.0;
};

/// Samples `trials` primes from [p_max, 2 p_max] and measures the good
/// residue classes for each.
GoodResidueReport good_residue_fraction(std::span<const std::int64_t> G, std::span<const std::int64_t> Y,
                                        std::uint64_t p_max, int trials, Rng& rng,
                                        const GoodResidueOptions& opts = {});

}  // namespace sbal
