#pragma once

// Domain types shared by every solver: coefficient sets, instances, solution
// profiles, reports, and the small amount of randomness plumbing the solvers
// need (seed derivation, sign re-randomization, instance generation).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sbal {

using CoeffVector = std::vector<int>;
using Rng = std::mt19937_64;

/// Raised when a brute-force or memory guard would be exceeded.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Either the full range [-d:d] or the zero-free range [±d].
class CoefficientSet {
 public:
  enum class Kind { FullRange, NoZero };

  static constexpr int kMaxD = 64;

  CoefficientSet(Kind kind, int d);
  static CoefficientSet full_range(int d) { return {Kind::FullRange, d}; }
  static CoefficientSet no_zero(int d) { return {Kind::NoZero, d}; }

  Kind kind() const { return kind_; }
  int d() const { return d_; }
  bool has_zero() const { return kind_ == Kind::FullRange; }
  bool contains(int z) const;
  int cardinality() const { return static_cast<int>(values_.size()); }
  // Ascending.
  const std::vector<int>& values() const { return values_; }
  // Position of z in values(), or -1.
  int index_of(int z) const;
  // "[-2:2]" or "[+-3]".
  std::string name() const;

  bool operator==(const CoefficientSet& o) const {
    return kind_ == o.kind_ && d_ == o.d_;
  }

 private:
  Kind kind_;
  int d_;
  std::vector<int> values_;
};

/// Input vector x together with its coefficient set. Entries are bounded so
/// that every c·x with c in C^n fits in a signed 64-bit integer.
class Instance {
 public:
  Instance(std::vector<std::int64_t> x, CoefficientSet coeff_set);

  std::span<const std::int64_t> x() const { return x_; }
  std::int64_t operator[](std::size_t i) const { return x_[i]; }
  std::size_t n() const { return x_.size(); }
  const CoefficientSet& coeff_set() const { return set_; }

  // 2^62 / (d * n).
  static std::int64_t magnitude_bound(int d, std::size_t n);

 private:
  std::vector<std::int64_t> x_;
  CoefficientSet set_;
};

/// π: C -> N, stored as counts aligned with coeff_set().values().
class SolutionProfile {
 public:
  SolutionProfile(CoefficientSet set, std::vector<int> counts);
  static SolutionProfile from_map(CoefficientSet set, const std::map<int, int>& counts);

  const CoefficientSet& coeff_set() const { return set_; }
  std::span<const int> counts() const { return counts_; }
  // π(z); zero when z is not in the set.
  int count(int z) const;
  int n() const { return n_; }

  bool operator==(const SolutionProfile& o) const {
    return set_ == o.set_ && counts_ == o.counts_;
  }

 private:
  CoefficientSet set_;
  std::vector<int> counts_;
  int n_ = 0;
};

struct Solution {
  CoeffVector c;
};

enum class Outcome { Solved, NoSolutionFound, RetryableFailure };

const char* outcome_name(Outcome o);

/// Outcome of a solver call. Solved always carries a verified solution.
struct SolverReport {
  Outcome outcome = Outcome::NoSolutionFound;
  std::optional<Solution> solution;
  std::map<std::string, std::int64_t> stats;
  std::vector<std::string> notes;

  bool solved() const { return outcome == Outcome::Solved; }

  static SolverReport no_solution() { return {}; }
  // Verifies c against inst; throws std::logic_error on a false positive.
  static SolverReport solved_with(const Instance& inst, CoeffVector c);
};

enum class ProfileFilter { All, EpsBalanced, EpsUnbalanced };

// How a pair (a, b) combines into a coefficient vector: a - b or a + b.
enum class Combine { Difference, Sum };

// ---------------------------------------------------------------------------
// Operations

/// c != 0, every c_i in C, and c·x == 0 in exact arithmetic.
bool is_solution(const Instance& inst, std::span<const int> c);

std::int64_t dot(std::span<const int> c, std::span<const std::int64_t> x);

SolutionProfile profile_of(std::span<const int> c, const CoefficientSet& set);

/// Strict test: |π(z) - n/|C|| > eps*n for some z.
bool is_eps_unbalanced(const SolutionProfile& pi, double eps);

/// Every profile with Σπ = n passing the filter, each exactly once, in
/// lexicographic order of the count vector (last coefficient varies fastest).
std::vector<SolutionProfile> enumerate_profiles(int n, const CoefficientSet& set,
                                                ProfileFilter filter = ProfileFilter::All,
                                                double eps = 0.0);

void for_each_profile(int n, const CoefficientSet& set,
                      const std::function<void(const SolutionProfile&)>& fn);

/// Negates c when its first nonzero entry is negative.
CoeffVector canonical_sign(CoeffVector c);

struct Rerandomized {
  Instance instance;
  std::vector<int> signs;  // each ±1
};

/// x'_i = s_i * x_i with i.i.d. uniform signs.
Rerandomized rerandomize(const Instance& inst, Rng& rng);
Instance apply_signs(const Instance& inst, std::span<const int> signs);
/// Maps a solution of the sign-flipped instance back (and vice versa).
CoeffVector map_solution(std::span<const int> signs, std::span<const int> c);

// Instance generation ------------------------------------------------------

struct UniformRange {
  std::int64_t W = 100;
};
struct Planted {
  SolutionProfile profile;
  std::int64_t W = 100;
};
using GenMode = std::variant<UniformRange, Planted>;

struct GeneratedInstance {
  Instance instance;
  std::optional<CoeffVector> planted;
};

/// UniformRange draws x_i from [-W, W] \ {0}. Planted picks c with the given
/// profile, draws x_1..x_{n-1} from [-W, W] \ {0} and solves for the last
/// entry; retries up to 10^4 times before giving up.
GeneratedInstance gen_instance(int n, const CoefficientSet& set, const GenMode& mode, Rng& rng);

// Randomness plumbing -------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t z);
/// Independent stream keyed by (seed, a, b); same key, same stream.
Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);
double uniform_real(Rng& rng);

}  // namespace sbal
