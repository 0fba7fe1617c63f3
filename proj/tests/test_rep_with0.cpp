#include <gtest/gtest.h>

#include "sbal/hashing.hpp"
#include "sbal/oracle.hpp"
#include "sbal/rep_with0.hpp"
#include "support.hpp"

using namespace sbal;
using sbal::tsupport::make;

TEST(PMaxWith0, Examples) {
  const auto r2 = CoefficientSet::full_range(2);
  EXPECT_EQ(p_max_with0(SolutionProfile::from_map(r2, {{0, 2}, {1, 1}, {-1, 1}}), 2), 9u);
  EXPECT_EQ(solution_pair_count(SolutionProfile::from_map(r2, {{0, 2}, {1, 1}, {-1, 1}}), 2), 36u);
  const auto r1 = CoefficientSet::full_range(1);
  EXPECT_EQ(p_max_with0(SolutionProfile::from_map(r1, {{0, 10}}), 1), 32u);
  EXPECT_EQ(p_max_with0(SolutionProfile::from_map(r2, {{2, 3}, {-2, 3}}), 2), 1u);
}

TEST(PairCount, MatchesEnumeration) {
  Rng rng(12);
  for (int t = 0; t < 150; ++t) {
    const int d = 1 + t % 3;
    const int n = 1 + static_cast<int>(uniform_int(rng, 0, d == 3 ? 5 : 7));
    const auto set = CoefficientSet::full_range(d);
    CoeffVector c(n);
    for (auto& z : c) z = static_cast<int>(uniform_int(rng, -d, d));
    std::vector<Alphabet> al(n);
    for (auto& a : al)
      for (int v = 0; v <= d; ++v) a.push_back(v);
    EXPECT_EQ(enumerate_pairs(c, al, al, Combine::Difference).pairs.size(),
              solution_pair_count(profile_of(c, set), d));
  }
}

TEST(BalancedWith0, Example) {
  auto inst = make({1, 2, 3, -4, -2}, CoefficientSet::full_range(2));
  Rng rng(3);
  auto r = balanced_sb_with0(inst, SolutionProfile(inst.coeff_set(), {1, 1, 1, 1, 1}), rng, 500);
  ASSERT_TRUE(r.solved());
  EXPECT_TRUE(is_solution(inst, r.solution->c));
}

TEST(BalancedWith0, InjectedResidueSucceeds) {
  const auto set = CoefficientSet::full_range(2);
  const auto pi = SolutionProfile(set, {2, 2, 2, 2, 2});
  for (int s = 0; s < 20; ++s) {
    Rng rng(100 + s);
    auto g = gen_instance(10, set, Planted{pi, 1'000'000}, rng);
    const auto& c = *g.planted;
    // a = max(c, 0) + 1 on zeros keeps a - b = c inside [0:2]
    CoeffVector a(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) a[i] = c[i] > 0 ? c[i] : (c[i] == 0 ? 1 : 0);
    const std::uint64_t p = 1'000'003;
    With0Options opts;
    opts.prime = p;
    opts.residue = mod_of(dot(a, g.instance.x()), p);
    auto res = balanced_with0_round(g.instance, pi, rng, opts);
    ASSERT_FALSE(res.cap_fired);
    ASSERT_TRUE(res.c) << "seed " << s;
    EXPECT_TRUE(is_solution(g.instance, *res.c));
  }
}

TEST(BalancedWith0, DegeneratePMaxStillCorrect) {
  const auto set = CoefficientSet::full_range(2);
  const auto pi = SolutionProfile::from_map(set, {{2, 3}, {-2, 3}});
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    auto g = gen_instance(6, set, Planted{pi, 1000}, rng);
    auto r = balanced_sb_with0(g.instance, pi, rng, 5);
    ASSERT_TRUE(r.solved());
    EXPECT_EQ(r.stats.at("prime"), 1);
  }
}

TEST(BalancedWith0, NoFalsePositives) {
  // powers of two: no nonzero [-1:1] combination vanishes
  auto inst = make({1, 2, 4, 8, 16, 32}, CoefficientSet::full_range(1));
  Rng rng(9);
  for (auto& p : enumerate_profiles(6, inst.coeff_set(), ProfileFilter::EpsBalanced, 0.25))
    EXPECT_FALSE(balanced_sb_with0(inst, p, rng, 20).solved());
}

TEST(BalancedWith0, ListWithinCapMostRounds) {
  const auto set = CoefficientSet::full_range(2);
  const auto pi = SolutionProfile(set, {2, 2, 2, 2, 2});
  int within = 0, rounds = 0;
  for (int s = 0; s < 10; ++s) {
    Rng rng(300 + s);
    auto g = gen_instance(10, set, Planted{pi, 1'000'000}, rng);
    for (int k = 0; k < 10; ++k, ++rounds) within += !balanced_with0_round(g.instance, pi, rng).cap_fired;
  }
  EXPECT_GE(2 * within, rounds);
}

TEST(SolveWith0, AgreesWithOracle) {
  Rng rng(21);
  for (int d = 1; d <= 2; ++d) {
    const auto set = CoefficientSet::full_range(d);
    int solvable = 0, agree = 0;
    for (int t = 0; t < 30; ++t) {
      auto inst = tsupport::random_instance(3 + t % 6, set, 60, rng);
      const bool truth = brute_force_solve(inst).solved();
      SolveOptions o;
      o.repeats = 30;
      auto r = solve_with0(inst, rng, o);
      if (r.solved()) {
        EXPECT_TRUE(truth);
        EXPECT_TRUE(is_solution(inst, r.solution->c));
      }
      solvable += truth;
      agree += truth && r.solved();
    }
    EXPECT_GE(agree * 100, solvable * 95);
  }
}

TEST(SolveWith0, EqualEntries) {
  auto inst = make({7, 7, 7, 7, 7}, CoefficientSet::full_range(1));
  Rng rng(1);
  auto r = solve_with0(inst, rng);
  ASSERT_TRUE(r.solved());
  EXPECT_EQ(r.stats.at("rounds"), 1);
}

TEST(SolveWith0, ThreadCountDoesNotChangeResult) {
  Rng gen(5);
  auto inst = tsupport::random_instance(8, CoefficientSet::full_range(2), 100, gen);
  SolveOptions one, four;
  four.threads = 4;
  Rng a(77), b(77);
  auto ra = solve_with0(inst, a, one), rb = solve_with0(inst, b, four);
  EXPECT_EQ(ra.outcome, rb.outcome);
  EXPECT_EQ(ra.solution ? ra.solution->c : CoeffVector{}, rb.solution ? rb.solution->c : CoeffVector{});
  EXPECT_EQ(ra.stats, rb.stats);
}
