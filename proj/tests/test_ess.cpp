#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "sbal/ess.hpp"
#include "sbal/oracle.hpp"
#include "support.hpp"

using namespace sbal;
using sbal::tsupport::make;

namespace {

const CoefficientSet kEss = CoefficientSet::full_range(1);

SolutionProfile prof(int neg, int zero, int pos) { return SolutionProfile(kEss, {neg, zero, pos}); }

}  // namespace

TEST(GoodPairCount, Examples) {
  EXPECT_EQ(good_pair_count(prof(2, 0, 2), 0), 1u);
  EXPECT_EQ(good_pair_count(prof(4, 2, 4), 1), 64u);
  EXPECT_EQ(exact_good_pair_count(prof(4, 2, 4), 1), 32u);  // C(4,1)^2 * C(2, 5 - 4)
  EXPECT_EQ(exact_good_pair_count(prof(3, 0, 2), 0), 0u);
  EXPECT_THROW(good_pair_count(prof(2, 0, 2), 3), std::invalid_argument);
  EXPECT_THROW(good_pair_count(SolutionProfile(CoefficientSet::full_range(2), {0, 1, 2, 1, 0}), 0),
               std::invalid_argument);
}

TEST(GoodPairCount, ExactMatchesEnumeration) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + t % 5;
    CoeffVector c(n);
    for (auto& z : c) z = static_cast<int>(uniform_int(rng, -1, 1));
    if (t % 2 == 0) {
      // force π(1) = π(-1)
      int k = static_cast<int>(uniform_int(rng, 1, n / 2));
      std::fill(c.begin(), c.end(), 0);
      for (int i = 0; i < k; ++i) c[i] = 1, c[n - 1 - i] = -1;
      std::shuffle(c.begin(), c.end(), rng);
    }
    const auto pi = profile_of(c, kEss);
    for (int e = 0; e <= std::min(pi.count(1), 1); ++e) {
      const auto pairs = enumerate_good_pairs(c, e);
      EXPECT_EQ(pairs.size(), exact_good_pair_count(pi, e));
      EXPECT_LE(exact_good_pair_count(pi, e), good_pair_count(pi, e));
      std::set<CoeffVector> as;
      for (auto& [a, b] : pairs) {
        EXPECT_TRUE(is_good_pair(a, b, c, e));
        as.insert(a);
      }
      EXPECT_EQ(as.size(), pairs.size());  // a determines b
    }
  }
}

TEST(GoodPair, Examples) {
  const CoeffVector c{1, 1, -1, -1};
  EXPECT_TRUE(is_good_pair(CoeffVector{1, 1, 0, 0}, CoeffVector{0, 0, 1, 1}, c, 0));
  EXPECT_FALSE(is_good_pair(CoeffVector{2, 1, 0, 0}, CoeffVector{0, 0, 1, 1}, c, 0));
  const CoeffVector z{0, 1, -1, 0};
  EXPECT_FALSE(is_good_pair(CoeffVector{2, 1, 0, 1}, CoeffVector{2, 0, 1, 1}, z, 1));
  EXPECT_FALSE(is_good_pair(CoeffVector{1, 1}, CoeffVector{0, 0, 1, 1}, c, 0));
}

TEST(DefaultEpsN, RespectsBounds) {
  EXPECT_EQ(default_eps_n(prof(4, 4, 4)), 0);  // 12 * 1 is not < 12
  EXPECT_EQ(default_eps_n(prof(5, 4, 5)), 1);
  EXPECT_EQ(default_eps_n(prof(0, 13, 0)), 0);
  for (int n = 2; n <= 60; n += 2) {
    auto pi = prof(n / 3, n - 2 * (n / 3), n / 3);
    const int e = default_eps_n(pi);
    EXPECT_TRUE(e == 0 || 12 * e < n);
    EXPECT_LE(e, pi.count(1));
  }
}

TEST(EssSolveProfile, Example) {
  auto inst = make({1, 4, 2, 3}, kEss);
  Rng rng(1);
  auto r = ess_solve_profile(inst, prof(2, 0, 2), 0, rng, 50);
  ASSERT_TRUE(r.solved());
  EXPECT_EQ(canonical_sign(r.solution->c), (CoeffVector{1, 1, -1, -1}));
}

TEST(EssSolveProfile, Preconditions) {
  auto inst = make(std::vector<std::int64_t>(12, 1), kEss);
  Rng rng(1);
  EXPECT_THROW(ess_solve_profile(inst, prof(4, 4, 4), 1, rng, 1), std::invalid_argument);  // 12 eps_n = n
  EXPECT_THROW(ess_solve_profile(inst, prof(3, 6, 3), 0, rng, 1), std::invalid_argument);  // π(0) > n/3
  EXPECT_THROW(ess_solve_profile(inst, prof(5, 4, 3), 0, rng, 1), std::invalid_argument);
}

TEST(EssSolveProfile, PlantedBothEps) {
  struct Case {
    int n, zeros, eps_n;
  };
  for (auto cs : {Case{12, 4, 0}, Case{14, 4, 1}}) {
    const int k = (cs.n - cs.zeros) / 2;
    const auto pi = prof(k, cs.zeros, k);
    int solved = 0;
    for (int s = 0; s < 10; ++s) {
      Rng rng(700 + s);
      auto g = gen_instance(cs.n, kEss, Planted{pi, 1 << 20}, rng);
      EssRoundStats st;
      auto rr = ess_round(g.instance, pi, cs.eps_n, rng, &st);
      EXPECT_GE(st.p_max, 1u);
      if (rr.c) EXPECT_TRUE(is_solution(g.instance, *rr.c));  // never a pseudosolution
      auto r = ess_solve_profile(g.instance, pi, cs.eps_n, rng, 4 * cs.n * cs.n);
      solved += r.solved();
    }
    EXPECT_GE(solved, 9) << "n=" << cs.n << " eps_n=" << cs.eps_n;
  }
}

TEST(EssRound, SpaceIsConstrainedCount) {
  auto inst = make({5, 3, 9, 1, 12, 7, 2, 8, 6, 4, 11, 10, 13, 15}, kEss);
  Rng rng(2);
  EssRoundStats st;
  ess_round(inst, prof(5, 4, 5), 1, rng, &st);
  EXPECT_EQ(st.space, 3432u * 7u);  // C(14,7) * C(7,1)
  EXPECT_EQ(st.p_max, good_pair_count(prof(5, 4, 5), 1));
}

TEST(SolveEss, PowersOfTwoUnsolvable) {
  std::vector<std::int64_t> x;
  for (int i = 0; i < 8; ++i) x.push_back(std::int64_t{1} << i);
  Rng rng(3);
  SolveOptions o;
  o.repeats = 20;
  EXPECT_EQ(solve_ess(make(x, kEss), rng, o).outcome, Outcome::NoSolutionFound);
}

TEST(SolveEss, DuplicatesSolved) {
  Rng rng(3);
  auto r = solve_ess(make({17, 5, 23, 5, 91, 2}, kEss), rng);
  ASSERT_TRUE(r.solved());
  EXPECT_TRUE(is_solution(make({17, 5, 23, 5, 91, 2}, kEss), r.solution->c));
}

TEST(SolveEss, AgreesWithOracle) {
  Rng rng(12);
  int solvable = 0, agree = 0;
  for (int t = 0; t < 40; ++t) {
    auto inst = tsupport::random_instance(4 + t % 7, kEss, 100, rng);
    const bool truth = brute_force_solve(inst).solved();
    SolveOptions o;
    o.repeats = 40;
    auto r = solve_ess(inst, rng, o);
    if (r.solved()) EXPECT_TRUE(truth);
    solvable += truth;
    agree += truth && r.solved();
  }
  ASSERT_GT(solvable, 0);
  EXPECT_GE(agree * 100, solvable * 95);
}

TEST(SolveEss, RejectsOtherSets) {
  Rng rng(1);
  EXPECT_THROW(solve_ess(make({1, 2}, CoefficientSet::full_range(2)), rng), std::invalid_argument);
}
