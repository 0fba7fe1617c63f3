#include <gtest/gtest.h>

#include <set>

#include "sbal/oracle.hpp"
#include "support.hpp"

using namespace sbal;
using sbal::tsupport::make;

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_solve(make({5, 7}, CoefficientSet::no_zero(1))).outcome, Outcome::NoSolutionFound);
  auto r = brute_force_solve(make({3, -3}, CoefficientSet::no_zero(1)));
  ASSERT_TRUE(r.solved());
  EXPECT_EQ(r.solution->c, (CoeffVector{1, 1}));

  // first canonical solution in lexicographic order, values ascending
  auto five = make({1, 2, 3, -4, -2}, CoefficientSet::full_range(2));
  auto s = brute_force_solve(five);
  ASSERT_TRUE(s.solved());
  EXPECT_EQ(s.solution->c, (CoeffVector{0, 0, 0, 1, -2}));
  bool seen = false;
  for_each_solution(five, [&](const CoeffVector& c) {
    seen |= c == CoeffVector{2, -1, 0, 1, -2};
    return true;
  });
  EXPECT_TRUE(seen);

  auto e = brute_force_solve(make({1, 2, 3, 6}, CoefficientSet::full_range(1)));
  EXPECT_EQ(e.solution->c, (CoeffVector{1, 1, -1, 0}));
}

TEST(BruteForce, Guard) {
  EXPECT_THROW(brute_force_solve(make(std::vector<std::int64_t>(20, 1), CoefficientSet::full_range(2))),
               GuardExceeded);
}

TEST(CountSolutions, Examples) {
  EXPECT_EQ(count_solutions(make({1, 1}, CoefficientSet::no_zero(1))), 2u);
  EXPECT_EQ(count_solutions(make({1, 2}, CoefficientSet::no_zero(1))), 0u);
  EXPECT_EQ(count_solutions(make({1, 1, 1, 1}, CoefficientSet::no_zero(1))), 6u);
  // frozen from an independent enumeration
  EXPECT_EQ(count_solutions(make({1, 2, 3, 6}, CoefficientSet::full_range(1))), 4u);
  EXPECT_EQ(count_solutions(make({1, 2, 3, -4, -2}, CoefficientSet::full_range(2))), 146u);
  EXPECT_EQ(count_solutions(make({1, 4, 2, 3}, CoefficientSet::full_range(1))), 6u);
  EXPECT_EQ(count_solutions(make({1, 1, 1, 1, 1, 5}, CoefficientSet::no_zero(3))), 906u);
  EXPECT_EQ(count_solutions(make({3, 7, -5, 2, 9}, CoefficientSet::no_zero(2))), 16u);
}

TEST(CountSolutions, SymmetricUnderNegation) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    auto inst = tsupport::random_instance(6, CoefficientSet::full_range(2), 30, rng);
    std::set<CoeffVector> all;
    for_each_solution(inst, [&](const CoeffVector& c) {
      EXPECT_TRUE(is_solution(inst, c));
      all.insert(c);
      return true;
    });
    EXPECT_EQ(all.size(), count_solutions(inst));
    for (auto c : all) {
      for (auto& z : c) z = -z;
      EXPECT_TRUE(all.count(c));
    }
  }
}

TEST(MinSupport, Examples) {
  auto m = min_support_solution(make({1, -1, 7}, CoefficientSet::full_range(1)));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->c, (CoeffVector{1, 1, 0}));
  EXPECT_FALSE(min_support_solution(make({5, 9}, CoefficientSet::full_range(1))));
}

TEST(MinSupport, MaximizesZeros) {
  Rng rng(8);
  const auto set = CoefficientSet::full_range(1);
  for (int t = 0; t < 20; ++t) {
    auto inst = tsupport::random_instance(8, set, 40, rng);
    auto m = min_support_solution(inst);
    int best = -1;
    for_each_solution(inst, [&](const CoeffVector& c) {
      best = std::max(best, profile_of(c, set).count(0));
      return true;
    });
    if (best < 0) {
      EXPECT_FALSE(m);
      continue;
    }
    ASSERT_TRUE(m);
    EXPECT_TRUE(is_solution(inst, m->c));
    EXPECT_EQ(profile_of(m->c, set).count(0), best);
  }
}

TEST(EnumeratePairs, Examples) {
  const Alphabet bit{0, 1};
  auto zero = enumerate_pairs(CoeffVector{0, 0}, {bit, bit}, {bit, bit}, Combine::Difference);
  EXPECT_EQ(zero.pairs.size(), 4u);
  for (auto& [a, b] : zero.pairs) EXPECT_EQ(a, b);

  auto sum = enumerate_pairs(CoeffVector{2}, {{0, 1}}, {{-3, -2, 1, 2}}, Combine::Sum);
  ASSERT_EQ(sum.pairs.size(), 2u);
  std::set<std::pair<int, int>> got;
  for (auto& [a, b] : sum.pairs) got.insert({a[0], b[0]});
  EXPECT_EQ(got, (std::set<std::pair<int, int>>{{0, 2}, {1, 1}}));

  auto one = enumerate_pairs(CoeffVector{1}, {{0, 1, 2}}, {{0, 1, 2}}, Combine::Difference);
  EXPECT_EQ(one.pairs.size(), 2u);
}

TEST(EnumeratePairs, EveryPairSatisfiesPredicate) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 6;
    CoeffVector c(n);
    for (auto& z : c) z = static_cast<int>(uniform_int(rng, -2, 2));
    std::vector<Alphabet> L(n, Alphabet{0, 1, 2}), R(n, Alphabet{0, 1, 2});
    for (auto& [a, b] : enumerate_pairs(c, L, R, Combine::Difference).pairs)
      for (int i = 0; i < n; ++i) EXPECT_EQ(a[i] - b[i], c[i]);
    for (auto& [a, b] : enumerate_pairs(c, L, R, Combine::Sum).pairs)
      for (int i = 0; i < n; ++i) EXPECT_EQ(a[i] + b[i], c[i]);
  }
}

TEST(CompatiblePair, Examples) {
  const auto band = CoefficientSet::full_range(1);
  auto hit = brute_force_compatible_pair({{2, 1, 1, 0}}, {{1, 2, 0, 1}}, band);
  ASSERT_TRUE(hit);
  EXPECT_EQ(*hit, (std::pair<std::size_t, std::size_t>{0, 0}));
  EXPECT_FALSE(brute_force_compatible_pair({{2, 1, 1, 0}}, {{0, 1, 1, 2}}, band));
  EXPECT_FALSE(brute_force_compatible_pair({}, {{0, 1, 1, 2}}, band));
}
