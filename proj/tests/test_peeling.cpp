#include <gtest/gtest.h>

#include <random>

#include "treeint/family.hpp"
#include "treeint/peeling.hpp"

using namespace treeint;

namespace {

// Greedily grown t-intersecting family of random sets.
SetFamily<WideSet> random_t_intersecting(std::mt19937_64& rng, int ground, int t, int max_size) {
  std::uniform_int_distribution<int> elem(0, ground - 1), size(t, max_size);
  std::vector<WideSet> members;
  for (int attempt = 0; attempt < 150 && members.size() < 25; ++attempt) {
    WideSet s;
    const int want = size(rng);
    while (s.count() < want) s.set(elem(rng));
    bool ok = true;
    for (const auto& m : members) ok = ok && m.intersection_count(s) >= t;
    if (ok) members.push_back(s);
  }
  return SetFamily<WideSet>(ground, std::move(members));
}

// Every member of H lies inside some member of F.
bool refines(const SetFamily<WideSet>& h, const SetFamily<WideSet>& f) {
  for (const auto& a : h) {
    bool inside = false;
    for (const auto& b : f) inside = inside || a.is_subset_of(b);
    if (!inside) return false;
  }
  return true;
}

// Proper subsets of a maximal member all fail against some member.
bool maximal_by_brute_force(const SetFamily<WideSet>& h, int t) {
  for (const auto& a : h) {
    bool ok = true;
    for_each_subset(a, [&](const WideSet& x) {
      if (x == a || !ok) return;
      bool fails = false;
      for (const auto& b : h) fails = fails || x.intersection_count(b) < t;
      if (!fails) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

TEST(MaximalReduce, Examples) {
  const SetFamily<WideSet> single(5, {WideSet{2}});
  EXPECT_EQ(maximal_reduce(single, 1), single);
  const SetFamily<WideSet> two(5, {WideSet{0, 1, 2}, WideSet{0, 1, 3}});
  EXPECT_EQ(maximal_reduce(two, 1), SetFamily<WideSet>(5, {WideSet{0}}));
  EXPECT_THROW(maximal_reduce(SetFamily<WideSet>(5, {WideSet{0}, WideSet{1}}), 1), std::invalid_argument);
}

TEST(MaximalReduce, TwoSetsMeetingInT) {
  const SetFamily<WideSet> fam(8, {WideSet{0, 1, 2, 3}, WideSet{0, 1, 4, 5}});
  const auto h = maximal_reduce(fam, 2);
  EXPECT_TRUE(check_maximal(h, 2).maximal());
  EXPECT_EQ(h, SetFamily<WideSet>(8, {WideSet{0, 1}}));
}

TEST(MaximalReduce, PostconditionsOnRandomFamilies) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    const int t = 1 + i % 3;
    const auto fam = random_t_intersecting(rng, 10 + i % 5, t, 8);
    const auto h = maximal_reduce(fam, t);
    ASSERT_TRUE(refines(h, fam));
    ASSERT_TRUE(is_t_intersecting(h, t));
    ASSERT_TRUE(is_antichain(h));
    ASSERT_TRUE(maximal_by_brute_force(h, t));
    ASSERT_TRUE(check_maximal(h, t).maximal());
    ASSERT_EQ(maximal_reduce(h, t), h);
  }
}

TEST(CheckMaximal, DetectsNonMaximalFamilies) {
  const SetFamily<WideSet> fam(6, {WideSet{0, 1, 2}, WideSet{0, 1, 3}});
  const auto check = check_maximal(fam, 1);
  EXPECT_FALSE(check.maximal());
  ASSERT_TRUE(check.uncovered.has_value());
  const SetFamily<WideSet> nested(6, {WideSet{0}, WideSet{0, 1}});
  EXPECT_FALSE(check_maximal(nested, 1).antichain);
}

TEST(CheckMaximal, CertificateEntriesAreValid) {
  const SetFamily<WideSet> fam(6, {WideSet{0, 1}, WideSet{0, 2}, WideSet{1, 2}});
  const auto check = check_maximal(fam, 1);
  ASSERT_TRUE(check.maximal());
  for (const auto& e : check.certificate->entries) {
    EXPECT_TRUE(e.subset.is_subset_of(fam[e.member]));
    EXPECT_NE(e.subset, fam[e.member]);
    EXPECT_LT(e.subset.intersection_count(fam[e.witness]), 1);
  }
}

TEST(Peel, AllMembersOfSizeT) {
  const SetFamily<WideSet> fam(6, {WideSet{0, 1}});
  const auto trace = peel(fam, 2, 2);
  ASSERT_EQ(trace.levels.size(), 1u);
  EXPECT_EQ(trace.levels[0].k, 0);
  EXPECT_EQ(trace.levels[0].w, maximal_reduce(fam, 2));
  const auto higher = peel(fam, 2, 4);
  ASSERT_EQ(higher.levels.size(), 3u);
  EXPECT_TRUE(higher.levels[0].w.empty());
  EXPECT_TRUE(higher.levels[1].w.empty());
  EXPECT_EQ(higher.levels[2].w, fam);
}

TEST(Peel, TwoLevelTrace) {
  const SetFamily<WideSet> fam(6, {WideSet{0, 1, 2}, WideSet{0, 1}});
  const auto trace = peel(fam, 2, 3);
  ASSERT_EQ(trace.levels.size(), 2u);
  EXPECT_EQ(trace.levels[0].k, 1);
  EXPECT_EQ(trace.levels[0].w, SetFamily<WideSet>(6, {WideSet{0, 1, 2}}));
  EXPECT_EQ(trace.levels[1].h, SetFamily<WideSet>(6, {WideSet{0, 1}}));
}

TEST(Peel, EmptyFamily) {
  const auto trace = peel(SetFamily<WideSet>(6, {}), 1, 3);
  ASSERT_EQ(trace.levels.size(), 3u);
  for (const auto& l : trace.levels) {
    EXPECT_TRUE(l.h.empty());
    EXPECT_TRUE(l.w.empty());
  }
}

TEST(Peel, RejectsBadInput) {
  EXPECT_THROW(peel(SetFamily<WideSet>(6, {WideSet{0, 1, 2}}), 1, 2), std::invalid_argument);
  EXPECT_THROW(peel(SetFamily<WideSet>(6, {WideSet{0}, WideSet{1}}), 1, 2), std::invalid_argument);
  EXPECT_THROW(peel(SetFamily<WideSet>(6, {}), 3, 2), std::invalid_argument);
}

TEST(Peel, TraceInvariantsOnRandomFamilies) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 120; ++i) {
    const int t = 1 + i % 3;
    const auto fam = random_t_intersecting(rng, 12, t, 9);
    const int q = std::max(t, fam.max_member_size());
    const auto trace = peel(fam, t, q);
    ASSERT_EQ(trace.levels.size(), static_cast<std::size_t>(q - t + 1));
    std::vector<WideSet> reference = fam.members();
    std::uniform_int_distribution<int> elem(0, 11);
    for (int j = 0; j < 60; ++j) {
      WideSet a;
      for (int e = 0; e < 8; ++e) a.set(elem(rng));
      reference.push_back(a);
    }
    const auto report = verify_trace(trace, std::span<const WideSet>(reference));
    ASSERT_TRUE(report.ok) << i;
    for (std::size_t li = 0; li < trace.levels.size(); ++li) {
      const auto& lvl = trace.levels[li];
      ASSERT_LE(lvl.h.max_member_size(), t + lvl.k);
      for (const auto& w : lvl.w) ASSERT_EQ(w.count(), t + lvl.k);
      if (li > 0) {
        ASSERT_TRUE(is_antichain(lvl.h));
        ASSERT_TRUE(maximal_by_brute_force(lvl.h, t));
      }
    }
  }
}

TEST(Peel, TreeForestsAgainstAllSpanningTrees) {
  const int n = 6;
  const auto& trees = spanning_trees(n);
  std::vector<WideSet> reference;
  for (const auto& t : trees) reference.push_back(convert_set<WideSet>(t));
  const EdgeSet core = edge_set(n, {{1, 2}, {3, 4}});
  std::vector<WideSet> members;
  for (std::size_t i = 0; i < trees.size() && members.size() < 20; i += 37)
    if (core.is_subset_of(trees[i])) members.push_back(convert_set<WideSet>(trees[i]));
  const SetFamily<WideSet> fam(pair_count(n), members, n);
  const auto trace = peel(fam, 2, 5);
  EXPECT_TRUE(verify_trace(trace, std::span<const WideSet>(reference)).ok);
}

TEST(NoSpreadRestriction, ValidAndEmpty) {
  EXPECT_FALSE(verify_no_spread_restriction(SetFamily<WideSet>(6, {}), 2, 1, Rational(2)).has_value());
  const SetFamily<WideSet> fam(8, {WideSet{0, 1, 2}, WideSet{0, 1, 3}, WideSet{0, 2, 3}, WideSet{1, 2, 3}});
  const auto h = maximal_reduce(fam, 2);
  EXPECT_TRUE(check_maximal(h, 2).maximal());
  EXPECT_FALSE(verify_no_spread_restriction(h, 2, 1, Rational(2)).has_value());
  EXPECT_THROW(verify_no_spread_restriction(h, 2, 1, Rational(3, 2)), std::invalid_argument);
}

TEST(NoSpreadRestriction, InjectedNonMaximalLevelIsCaught) {
  // All 2-subsets of a 12-element set padded by a common element: far from
  // maximal as a 1-intersecting family, and its restriction to the common
  // element is spread.
  std::vector<WideSet> members;
  for (int a = 1; a <= 12; ++a)
    for (int b = a + 1; b <= 12; ++b) members.push_back(WideSet{0, a, b});
  const SetFamily<WideSet> w(13, members);
  const auto v = verify_no_spread_restriction(w, 1, 2, Rational(3));
  ASSERT_TRUE(v.has_value());
  EXPECT_FALSE(check_maximal(w, 1).maximal());
}
