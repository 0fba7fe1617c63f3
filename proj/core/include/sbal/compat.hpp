#pragma once

// Compatible-pair recovery with random compatibility certificates.
//
// Vectors live in [0:2]^d with exactly eps*d twos and floor(d/2) ones. A pair
// (a, b) is compatible when a - b stays in [-1:1]^d.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sbal/core.hpp"

namespace sbal {

/// (1-e) H(e/(1-e)) + (1/2+e) H(4e/(1+2e)) - H(2e), for 0 <= e <= 1/4.
double c_certificate(double eps);

/// H((λ-e)/(1-e))(1-e) + H(λ/(1/2+e))(1/2+e) - 2H(λ) + K, λ in [e, 1/2+e].
double c0_exponent(double eps, double lambda, double K);

/// 2H(λ) - H(2(λ-e)): the smallest K for which a certificate is likely.
double certificate_k_floor(double eps, double lambda);

struct Certificate {
  std::uint64_t L = 0;  // bitmask over global coordinates
  std::uint64_t R = 0;
};

struct CertificateScheme {
  int d = 0;
  int ell = 1;
  double eps = 0.0;
  double lambda = 0.0;  // after rounding
  double K = 0.0;
  double c0 = 0.0;
  int set_size = 0;                      // |L| = |R| per block
  std::vector<std::vector<int>> blocks;  // coordinates of each U_i
  std::vector<std::uint64_t> block_mask;
  std::vector<std::vector<Certificate>> pcert;
};

/// Random equal partition of [d] into ell blocks, then ceil(2^{K |U_i|})
/// certificates per block drawn with replacement. K is the floor above
/// plus log2(d)/|U_i|. ell = 0 picks 1 for d <= 24 and 2 above.
CertificateScheme build_scheme(int d, double eps, int ell, Rng& rng);

/// A-side: twos of v inside L, zeros of v outside R. B-side mirrored.
bool is_a_certificate(const Certificate& cert, std::uint64_t block_mask, std::uint64_t zeros, std::uint64_t twos);
bool is_b_certificate(const Certificate& cert, std::uint64_t block_mask, std::uint64_t zeros, std::uint64_t twos);

/// For every block and every pattern in [0:2]^{U_i} (base-3 code, first
/// block coordinate least significant) the accepting certificate indices.
struct AuxSets {
  std::vector<std::vector<std::vector<std::uint32_t>>> auxA, auxB;  // [block][pattern]
};

AuxSets build_aux_sets(const CertificateScheme& scheme, std::uint64_t guard = 100'000'000);

/// Lazily filled version of AuxSets used by the tester.
class AuxCache {
  struct Key {
    std::uint64_t zeros, twos;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.zeros * 0x9e3779b97f4a7c15ULL ^ k.twos; }
  };

 public:
  explicit AuxCache(const CertificateScheme& s) : s_(s), a_(s.blocks.size()), b_(s.blocks.size()) {}
  const std::vector<std::uint32_t>& a_side(std::size_t block, std::uint64_t zeros, std::uint64_t twos);
  const std::vector<std::uint32_t>& b_side(std::size_t block, std::uint64_t zeros, std::uint64_t twos);

 private:
  const CertificateScheme& s_;
  std::vector<std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash>> a_, b_;
};

struct CompatOptions {
  int ell = 0;                   // 0: default rule
  bool require_distinct = false; // for A = B: never pair an index with itself
};

struct CompatStats {
  std::uint64_t rounds = 0;
  std::uint64_t candidates = 0;
  std::uint64_t budget_breaks = 0;   // vectors abandoned at the per-vector budget
  std::uint64_t unbalanced_skips = 0;  // vectors failing block balance
  std::uint64_t false_hits = 0;      // shared tuples that failed verification
};

using CompatPair = std::pair<std::size_t, std::size_t>;

/// One round against a prebuilt scheme.
std::optional<CompatPair> compatibility_round(const CertificateScheme& scheme, AuxCache& aux,
                                              const std::vector<CoeffVector>& A, const std::vector<CoeffVector>& B,
                                              const CompatOptions& opts, CompatStats* stats = nullptr);

/// `repeats` rounds, each with a fresh scheme. Every returned pair has been
/// checked entrywise.
std::optional<CompatPair> compatibility_test(const std::vector<CoeffVector>& A, const std::vector<CoeffVector>& B,
                                             double eps, Rng& rng, int repeats, const CompatOptions& opts = {},
                                             CompatStats* stats = nullptr);

}  // namespace sbal
