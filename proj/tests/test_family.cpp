#include <gtest/gtest.h>

#include "oracles.hpp"
#include "treeint/family.hpp"

using namespace treeint;

namespace {

// Pairwise check written out directly.
bool pairwise_at_least(const std::vector<EdgeSet>& members, int t) {
  for (const auto& a : members)
    for (const auto& b : members)
      if (a.intersection_count(b) < t) return false;
  return true;
}

EdgeSet path_forest(int n, std::vector<int> order) {
  EdgeSet f;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) f.set(make_edge(order[i], order[i + 1], n).index);
  return f;
}

}  // namespace

TEST(SetFamily, SortsAndDeduplicates) {
  const SetFamily<WideSet> fam(10, {WideSet{3}, WideSet{1}, WideSet{3}});
  EXPECT_EQ(fam.size(), 2u);
  EXPECT_EQ(fam[0], WideSet{1});
  EXPECT_TRUE(fam.contains(WideSet{3}));
  EXPECT_EQ(fam.support(), WideSet({1, 3}));
  EXPECT_THROW(SetFamily<WideSet>(3, {WideSet{3}}), std::out_of_range);
  EXPECT_THROW(SetFamily<EdgeSet>(65, {}), std::out_of_range);
}

TEST(TIntersecting, Examples) {
  const EdgeSet f = edge_set(5, {{1, 2}, {3, 4}});
  EXPECT_TRUE(is_t_intersecting(build_trivial(5, f), 2));
  const auto stars = TreeFamily::of_graph(4, {star_edges(4, 1), star_edges(4, 2)});
  EXPECT_TRUE(is_t_intersecting(stars, 1));
  EXPECT_FALSE(is_t_intersecting(stars, 2));
  const auto w = t_intersection_violation(stars, 2);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->size, 1);
  EXPECT_TRUE(is_t_intersecting(TreeFamily::of_graph(3, spanning_trees(3)), 1));
  EXPECT_EQ(min_pairwise_intersection(TreeFamily::of_graph(3, spanning_trees(3))), 1);
}

TEST(TIntersecting, SelfPairsCountAndEmptyFamilyPasses) {
  EXPECT_TRUE(is_t_intersecting(SetFamily<WideSet>(5, {}), 3));
  EXPECT_FALSE(is_t_intersecting(SetFamily<WideSet>(5, {WideSet{1}}), 2));
  EXPECT_THROW(is_t_intersecting(SetFamily<WideSet>(5, {}), -1), std::invalid_argument);
}

TEST(TIntersecting, AgreesWithPairwiseOracleAndWorkers) {
  const auto& trees = spanning_trees(5);
  for (int t = 0; t <= 4; ++t)
    for (std::size_t start = 0; start < trees.size(); start += 17) {
      std::vector<EdgeSet> members;
      for (std::size_t i = start; i < trees.size() && members.size() < 6; i += 3)
        if (trees[i].intersection_count(trees[start]) >= t) members.push_back(trees[i]);
      const auto fam = TreeFamily::of_graph(5, members);
      ASSERT_EQ(is_t_intersecting(fam, t), pairwise_at_least(fam.members(), t));
      ASSERT_EQ(is_t_intersecting(fam, t, 3), is_t_intersecting(fam, t, 1));
    }
}

TEST(Restriction, Laws) {
  const auto t4 = TreeFamily::of_graph(4, spanning_trees(4));
  EXPECT_EQ(restriction(t4, EdgeSet{}), t4);
  const EdgeSet e = edge_set(4, {{1, 2}});
  EXPECT_EQ(restriction(t4, e).size(), 8u);
  EXPECT_EQ(subfamily_containing(t4, e).size(), 8u);
  for (const auto& a : subfamily_containing(t4, e)) EXPECT_TRUE(t4.contains(a));
  EXPECT_EQ(restriction(t4, edge_set(4, {{1, 2}, {1, 3}, {2, 3}}) ).size(), 0u);
  const auto& trees = spanning_trees(5);
  const auto t5 = TreeFamily::of_graph(5, trees);
  for (const auto& x : {edge_set(5, {{1, 2}}), edge_set(5, {{1, 2}, {4, 5}}), edge_set(5, {{1, 3}, {3, 5}})}) {
    EXPECT_EQ(restriction(t5, x).size(), subfamily_containing(t5, x).size());
    for (const auto& a : restriction(t5, x)) EXPECT_FALSE(a.intersects(x));
  }
}

TEST(Forests, EnumerationMatchesOracle) {
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t expected = 0;
    for (oracle::Mask m = 0; m < (oracle::Mask{1} << pair_count(n)); ++m)
      if (!oracle::component_sizes(n, m).empty()) ++expected;
    std::uint64_t got = 0;
    EdgeSet prev;
    for (int s = 0; s <= n - 1; ++s) {
      bool first = true;
      for_each_forest(n, s, [&](const EdgeSet& f) {
        ++got;
        ASSERT_EQ(f.count(), s);
        if (!first) {
          ASSERT_LT(prev, f);
        }
        prev = f;
        first = false;
      });
    }
    EXPECT_EQ(got, expected) << n;
  }
}

TEST(BuildTrivial, Examples) {
  EXPECT_EQ(build_trivial(4, edge_set(4, {{1, 2}, {3, 4}})).size(), 4u);
  EXPECT_EQ(build_trivial(4, EdgeSet{}).size(), 16u);
  EXPECT_EQ(build_trivial(4, star_edges(4, 2)).size(), 1u);
  EXPECT_THROW(build_trivial(4, edge_set(4, {{1, 2}, {2, 3}, {1, 3}})), CycleError);
}

TEST(BuildTrivial, SizeMatchesCountFormulaOnEveryForest) {
  for (int n = 2; n <= 6; ++n)
    for (int s = 0; s <= n - 1; ++s)
      for_each_forest(n, s, [&](const EdgeSet& f) {
        ASSERT_EQ(BigCount(build_trivial(n, f).size()), count_trees_containing(profile_of(components_of(n, f))));
      });
}

TEST(BuildU, Examples) {
  const EdgeSet f = edge_set(5, {{1, 2}, {3, 4}});
  EXPECT_EQ(build_U(5, 2, 0, f), build_trivial(5, f));
  const EdgeSet path = path_forest(4, {1, 2, 3, 4});
  std::uint64_t expected = 0;
  for (auto t : oracle::spanning_trees(4)) {
    EdgeSet tree;
    for (int i = 0; i < 6; ++i)
      if (t >> i & 1) tree.set(i);
    if (tree.intersection_count(path) >= 2) ++expected;
  }
  const auto u = build_U(4, 1, 1, path);
  EXPECT_EQ(u.size(), expected);
  EXPECT_TRUE(is_t_intersecting(u, 1));
  EXPECT_THROW(build_U(4, 1, 1, edge_set(4, {{1, 2}})), std::invalid_argument);
  EXPECT_THROW(build_U(4, -1, 1, path), std::invalid_argument);
}

TEST(BuildU, AlwaysTIntersectingUpToFive) {
  for (int n = 2; n <= 5; ++n)
    for (int t = 1; t <= n - 1; ++t)
      for (int r = 0; t + 2 * r <= n - 1; ++r)
        for_each_forest(n, t + 2 * r, [&](const EdgeSet& f) { ASSERT_TRUE(is_t_intersecting(build_U(n, t, r, f), t)); });
}

TEST(ComputeA, Examples) {
  const auto a420 = compute_A_exact(4, 2, 0);
  EXPECT_EQ(a420.value, 4);
  EXPECT_EQ(profile_of(components_of(4, a420.argmax)), balanced_profile(4, 2));
  EXPECT_EQ(compute_A_exact(5, 2, 0).value, 20);
  EXPECT_THROW(compute_A_exact(7, 1, 0), std::out_of_range);
  EXPECT_THROW(compute_A_exact(5, 2, 2), std::out_of_range);
}

TEST(ComputeA, ZeroExcessIsTrivialWithBalancedMaximizers) {
  for (int n = 2; n <= 5; ++n)
    for (int t = 0; t <= n - 1; ++t) {
      const auto a = compute_A_exact(n, t, 0);
      ASSERT_EQ(a.value, size_trivial(n, t));
      ASSERT_EQ(a.maximizer_profiles.size(), 1u);
      ASSERT_EQ(*a.maximizer_profiles.begin(), balanced_profile(n, t));
    }
}

TEST(ComputeA, ValueMatchesBuiltFamily) {
  const auto a = compute_A_exact(5, 1, 1);
  EXPECT_EQ(BigCount(build_U(5, 1, 1, a.argmax).size()), a.value);
  for_each_forest(5, 3, [&](const EdgeSet& f) { ASSERT_LE(BigCount(build_U(5, 1, 1, f).size()), a.value); });
}

TEST(HM, SizesAndIntersection) {
  EXPECT_EQ(build_HM_family(4, make_edge(1, 2, 4)).size(), 10u);
  EXPECT_EQ(build_HM_family(5, make_edge(1, 2, 5)).size(), 53u);
  for (int n = 4; n <= 7; ++n) {
    const auto fam = build_HM_family(n, make_edge(1, 2, n));
    EXPECT_EQ(BigCount(fam.size()), 2 * oracle::power(n, n - 3) + n - 2);
    EXPECT_TRUE(is_t_intersecting(fam, 1));
  }
  EXPECT_EQ(build_star_family(5).size(), 5u);
  EXPECT_THROW(build_star_family(2), std::out_of_range);
}

TEST(Avoiding, ContainingAvoidingCount) {
  const int n = 7;
  const EdgeSet f = edge_set(n, {{1, 2}, {3, 4}});
  const LabeledTree path(n, path_forest(n, {1, 2, 3, 4, 5, 6, 7}));
  EXPECT_THROW(count_containing_avoiding(n, f, path), std::invalid_argument);
  const LabeledTree other(n, path_forest(n, {1, 3, 5, 7, 2, 4, 6}));
  const EdgeSet avoid = other.edges() - f;
  std::uint64_t expected = 0;
  for (const auto& s : spanning_trees(n))
    if (f.is_subset_of(s) && s.intersection_count(avoid) == 0) ++expected;
  EXPECT_EQ(count_containing_avoiding(n, f, other), expected);
  EXPECT_GE(expected, 1u);
}

TEST(Avoiding, LowStarIntersection) {
  const int n = 7;
  const EdgeSet f = edge_set(n, {{1, 2}, {3, 4}});
  const LabeledTree star(n, star_edges(n, 7));
  const BigCount c = count_low_star_intersection(n, f, star, 2);
  EXPECT_GT(c, 216);
  const LabeledTree star6(6, star_edges(6, 6));
  EXPECT_GT(count_low_star_intersection(6, edge_set(6, {{1, 2}, {3, 4}}), star6, 2), 25);
  EXPECT_THROW(count_low_star_intersection(n, edge_set(n, {{1, 2}, {3, 4}, {5, 6}, {1, 5}, {3, 6}}), star, 5),
               std::out_of_range);
  EXPECT_THROW(count_low_star_intersection(n, edge_set(n, {{1, 7}, {2, 7}}), star, 2), std::invalid_argument);
  EXPECT_THROW(count_low_star_intersection(n, f, LabeledTree(n, path_forest(n, {1, 2, 3, 4, 5, 6, 7})), 2),
               std::invalid_argument);
}
