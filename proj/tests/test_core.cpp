#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "sbal/core.hpp"
#include "sbal/oracle.hpp"
#include "support.hpp"

using namespace sbal;
using sbal::tsupport::make;

namespace {

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(CoefficientSet, MembersAndCardinality) {
  for (int d = 1; d <= 6; ++d) {
    auto full = CoefficientSet::full_range(d);
    auto nz = CoefficientSet::no_zero(d);
    EXPECT_EQ(full.cardinality(), 2 * d + 1);
    EXPECT_EQ(nz.cardinality(), 2 * d);
    for (int z = -d - 1; z <= d + 1; ++z) {
      EXPECT_EQ(full.contains(z), std::abs(z) <= d);
      EXPECT_EQ(nz.contains(z), std::abs(z) <= d && z != 0);
    }
    EXPECT_TRUE(std::is_sorted(full.values().begin(), full.values().end()));
  }
  EXPECT_EQ(CoefficientSet::full_range(2).name(), "[-2:2]");
  EXPECT_EQ(CoefficientSet::no_zero(3).name(), "[+-3]");
  EXPECT_THROW(CoefficientSet::full_range(0), std::invalid_argument);
}

TEST(Instance, MagnitudeBoundChecked) {
  const auto set = CoefficientSet::full_range(2);
  const auto bound = Instance::magnitude_bound(2, 4);
  EXPECT_NO_THROW(make({bound, -bound, 1, 2}, set));
  EXPECT_THROW(make({bound + 1, 1, 1, 1}, set), std::invalid_argument);
  EXPECT_THROW(make({}, set), std::invalid_argument);
}

TEST(IsSolution, Examples) {
  EXPECT_TRUE(is_solution(make({3, -3}, CoefficientSet::no_zero(1)), CoeffVector{1, 1}));
  EXPECT_FALSE(is_solution(make({5}, CoefficientSet::full_range(1)), CoeffVector{0}));
  EXPECT_TRUE(is_solution(make({1, 2, 3, 6}, CoefficientSet::full_range(1)), CoeffVector{1, 1, 1, -1}));
  // entry outside C
  EXPECT_FALSE(is_solution(make({1, 2}, CoefficientSet::full_range(1)), CoeffVector{2, -1}));
  EXPECT_FALSE(is_solution(make({1, 1}, CoefficientSet::no_zero(1)), CoeffVector{0, 0}));
  EXPECT_THROW(is_solution(make({1, 2}, CoefficientSet::full_range(1)), CoeffVector{1}), std::invalid_argument);
}

TEST(ProfileOf, Examples) {
  auto p = profile_of(CoeffVector{1, 1, -1, -1}, CoefficientSet::no_zero(1));
  EXPECT_EQ(p.count(1), 2);
  EXPECT_EQ(p.count(-1), 2);
  auto q = profile_of(CoeffVector{0, 0, 0}, CoefficientSet::full_range(1));
  EXPECT_EQ(q.count(0), 3);
  EXPECT_EQ(q.count(1), 0);
  auto r = profile_of(CoeffVector{2, -1, 0, 1, -2}, CoefficientSet::full_range(2));
  for (int z = -2; z <= 2; ++z) EXPECT_EQ(r.count(z), 1);
  EXPECT_THROW(profile_of(CoeffVector{0}, CoefficientSet::no_zero(1)), std::invalid_argument);
}

TEST(ProfileOf, SumsToLength) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + t % 4;
    const auto set = t % 2 ? CoefficientSet::full_range(d) : CoefficientSet::no_zero(d);
    const int n = 1 + t % 9;
    CoeffVector c(n);
    for (auto& z : c) z = set.values()[uniform_int(rng, 0, set.cardinality() - 1)];
    auto p = profile_of(c, set);
    EXPECT_EQ(p.n(), n);
    EXPECT_EQ(std::accumulate(p.counts().begin(), p.counts().end(), 0), n);
  }
}

TEST(EnumerateProfiles, Examples) {
  auto two = enumerate_profiles(2, CoefficientSet::no_zero(1));
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(enumerate_profiles(6, CoefficientSet::no_zero(1)).size(), 7u);
  auto bal = enumerate_profiles(3, CoefficientSet::full_range(1), ProfileFilter::EpsBalanced, 0.0);
  ASSERT_EQ(bal.size(), 1u);
  for (int z = -1; z <= 1; ++z) EXPECT_EQ(bal[0].count(z), 1);
}

TEST(EnumerateProfiles, StarsAndBarsAndDistinct) {
  for (int d = 1; d <= 3; ++d)
    for (auto set : {CoefficientSet::full_range(d), CoefficientSet::no_zero(d)})
      for (int n = 1; n <= 8; ++n) {
        auto all = enumerate_profiles(n, set);
        const int k = set.cardinality();
        EXPECT_EQ(all.size(), binom(n + k - 1, k - 1));
        std::set<std::vector<int>> seen;
        for (auto& p : all) {
          EXPECT_EQ(p.n(), n);
          seen.insert({p.counts().begin(), p.counts().end()});
        }
        EXPECT_EQ(seen.size(), all.size());
        // filters partition All
        const double eps = 0.1;
        auto b = enumerate_profiles(n, set, ProfileFilter::EpsBalanced, eps);
        auto u = enumerate_profiles(n, set, ProfileFilter::EpsUnbalanced, eps);
        EXPECT_EQ(b.size() + u.size(), all.size());
        for (auto& p : u) EXPECT_TRUE(is_eps_unbalanced(p, eps));
        for (auto& p : b) EXPECT_FALSE(is_eps_unbalanced(p, eps));
      }
}

TEST(EpsUnbalanced, Examples) {
  const auto pm1 = CoefficientSet::no_zero(1);
  EXPECT_FALSE(is_eps_unbalanced(SolutionProfile::from_map(pm1, {{1, 3}, {-1, 3}}), 0.1));
  EXPECT_TRUE(is_eps_unbalanced(SolutionProfile::from_map(pm1, {{1, 6}}), 0.4));
  EXPECT_FALSE(is_eps_unbalanced(SolutionProfile(CoefficientSet::full_range(2), {1, 1, 1, 1, 1}), 0.0));
  // strict: |4 - 3| = 1 is not > 1/6 * 6
  EXPECT_FALSE(is_eps_unbalanced(SolutionProfile::from_map(pm1, {{1, 4}, {-1, 2}}), 1.0 / 6.0));
}

TEST(CanonicalSign, FlipsNegativeLead) {
  EXPECT_EQ(canonical_sign({0, -1, 2}), (CoeffVector{0, 1, -2}));
  EXPECT_EQ(canonical_sign({0, 1, -2}), (CoeffVector{0, 1, -2}));
}

TEST(Rerandomize, Examples) {
  const auto set = CoefficientSet::full_range(1);
  auto flipped = apply_signs(make({3, -5}, set), std::vector<int>{-1, 1});
  EXPECT_EQ(flipped[0], -3);
  EXPECT_EQ(flipped[1], -5);

  Rng rng(5);
  auto inst = make({1, 4, 2, 3}, set);
  auto rr = rerandomize(inst, rng);
  CoeffVector c{1, 1, -1, -1};
  EXPECT_TRUE(is_solution(rr.instance, map_solution(rr.signs, c)));
  // applying the recorded signs twice gives x back
  auto back = apply_signs(rr.instance, rr.signs);
  EXPECT_TRUE(std::equal(back.x().begin(), back.x().end(), inst.x().begin()));
}

TEST(Rerandomize, DotProductIdentity) {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto set = CoefficientSet::full_range(3);
    auto inst = tsupport::random_instance(7, set, 1000, rng);
    auto rr = rerandomize(inst, rng);
    CoeffVector c(7);
    for (auto& z : c) z = static_cast<int>(uniform_int(rng, -3, 3));
    EXPECT_EQ(dot(map_solution(rr.signs, c), rr.instance.x()), dot(c, inst.x()));
  }
}

TEST(Rerandomize, PreservesSolutionCount) {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto set = t % 2 ? CoefficientSet::full_range(1) : CoefficientSet::no_zero(2);
    auto inst = tsupport::random_instance(6 + t % 3, set, 20, rng);
    auto rr = rerandomize(inst, rng);
    EXPECT_EQ(count_solutions(inst), count_solutions(rr.instance));
  }
}

TEST(GenInstance, UniformRange) {
  Rng rng(3);
  auto g = gen_instance(10, CoefficientSet::full_range(1), UniformRange{100}, rng);
  EXPECT_EQ(g.instance.n(), 10u);
  EXPECT_FALSE(g.planted);
  for (auto v : g.instance.x()) {
    EXPECT_NE(v, 0);
    EXPECT_LE(std::abs(v), 100);
  }
}

TEST(GenInstance, PlantedMatchesProfile) {
  Rng rng(4);
  const auto pm1 = CoefficientSet::no_zero(1);
  auto p = SolutionProfile::from_map(pm1, {{1, 2}, {-1, 2}});
  auto g = gen_instance(4, pm1, Planted{p}, rng);
  ASSERT_TRUE(g.planted);
  EXPECT_TRUE(is_solution(g.instance, *g.planted));
  EXPECT_EQ(profile_of(*g.planted, pm1), p);

  for (int t = 0; t < 50; ++t) {
    const auto set = CoefficientSet::full_range(2);
    const int n = 4 + t % 6;
    auto profiles = enumerate_profiles(n, set);
    auto& q = profiles[uniform_int(rng, 0, static_cast<std::int64_t>(profiles.size()) - 2)];
    if (q.count(0) >= n - 1) continue;  // a lone nonzero would force x_i = 0
    auto h = gen_instance(n, set, Planted{q, 1000}, rng);
    ASSERT_TRUE(h.planted);
    EXPECT_TRUE(is_solution(h.instance, *h.planted));
    auto hp = profile_of(*h.planted, set);
    // canonical sign may mirror the profile
    std::vector<int> mirrored(q.counts().rbegin(), q.counts().rend());
    EXPECT_TRUE(hp == q || hp == SolutionProfile(set, mirrored));
  }
}

TEST(GenInstance, Errors) {
  Rng rng(1);
  const auto set = CoefficientSet::full_range(1);
  EXPECT_THROW(gen_instance(1, set, Planted{SolutionProfile(set, {0, 0, 1})}, rng), std::invalid_argument);
  EXPECT_THROW(gen_instance(3, set, Planted{SolutionProfile(set, {0, 3, 0})}, rng), std::invalid_argument);
  EXPECT_THROW(gen_instance(3, set, UniformRange{0}, rng), std::invalid_argument);
}

TEST(DeriveRng, SameKeySameStream) {
  auto a = derive_rng(9, 1, 2), b = derive_rng(9, 1, 2), c = derive_rng(9, 2, 1);
  EXPECT_EQ(a(), b());
  EXPECT_NE(derive_rng(9, 1, 2)(), c());
}

TEST(SolverReport, RejectsInvalidSolution) {
  auto inst = make({1, 2}, CoefficientSet::full_range(1));
  EXPECT_THROW(SolverReport::solved_with(inst, {1, 1}), std::logic_error);
  auto ok = SolverReport::solved_with(make({2, 2}, CoefficientSet::full_range(1)), {-1, 1});
  EXPECT_EQ(ok.solution->c, (CoeffVector{1, -1}));
}
