#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "treeint/io.hpp"
#include "treeint/search.hpp"

using namespace treeint;

namespace {

// Largest t-intersecting subfamily of T_n by checking every subset (n <= 4).
std::size_t brute_force_max(int n, int t) {
  const auto& trees = spanning_trees(n);
  const std::size_t m = trees.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      if (mask >> i & 1U)
        for (std::size_t j = i + 1; j < m && ok; ++j)
          if ((mask >> j & 1U) && trees[i].intersection_count(trees[j]) < t) ok = false;
    if (ok) best = size;
  }
  return best;
}

SearchResult solve(int n, int t, bool seeds, bool symmetry = false) {
  SearchOptions opts;
  opts.symmetry = symmetry;
  if (seeds) opts.seeds = seed_constructions(n, t);
  return search_max_family(build_compatibility_graph(n, t), opts);
}

}  // namespace

TEST(CompatibilityGraph, Examples) {
  const auto g3 = build_compatibility_graph(3, 1);
  EXPECT_EQ(g3.vertices.size(), 3u);
  EXPECT_EQ(g3.edge_count(), 3u);
  for (int n = 2; n <= 5; ++n) EXPECT_EQ(build_compatibility_graph(n, n - 1).edge_count(), 0u);
  EXPECT_EQ(build_compatibility_graph(4, 3).edge_count(), 0u);
  EXPECT_THROW(build_compatibility_graph(7, 1), std::out_of_range);
  EXPECT_THROW(build_compatibility_graph(4, 4), std::out_of_range);
}

TEST(CompatibilityGraph, SymmetricAndIndependentOfWorkers) {
  const auto a = build_compatibility_graph(5, 2, kDefaultSearchCap, 1);
  const auto b = build_compatibility_graph(5, 2, kDefaultSearchCap, 3);
  for (std::size_t i = 0; i < a.vertices.size(); ++i)
    for (std::size_t j = 0; j < a.vertices.size(); ++j) {
      ASSERT_EQ(a.adjacency.test(i, j), a.adjacency.test(j, i));
      ASSERT_EQ(a.adjacency.test(i, j), b.adjacency.test(i, j));
      ASSERT_EQ(a.adjacency.test(i, j), i != j && a.vertices[i].intersection_count(a.vertices[j]) >= 2);
    }
}

TEST(Search, Examples) {
  const auto r3 = solve(3, 1, false);
  EXPECT_EQ(r3.max_size, 3u);
  EXPECT_EQ(r3.status, SearchStatus::kProvenOptimal);
  const auto r42 = solve(4, 2, true);
  EXPECT_GE(r42.max_size, 4u);
  EXPECT_EQ(r42.status, SearchStatus::kProvenOptimal);
}

TEST(Search, MatchesBruteForceAtFourVertices) {
  for (int t = 1; t <= 3; ++t) {
    const std::size_t expected = brute_force_max(4, t);
    EXPECT_EQ(solve(4, t, false).max_size, expected) << t;
    EXPECT_EQ(solve(4, t, true).max_size, expected) << t;
    EXPECT_EQ(solve(4, t, false, true).max_size, expected) << t;
  }
}

TEST(Search, FiveVerticesOneIntersecting) {
  const auto r = solve(5, 1, true);
  EXPECT_EQ(r.status, SearchStatus::kProvenOptimal);
  EXPECT_EQ(r.max_size, 53u);
  EXPECT_TRUE(certify_family(5, r.witness, 1).valid);
}

TEST(Search, DominatesSeedsAndCertifies) {
  for (int n = 3; n <= 5; ++n)
    for (int t = 1; t <= n - 1; ++t) {
      const auto seeds = seed_constructions(n, t);
      SearchOptions opts;
      opts.seeds = seeds;
      const auto r = search_max_family(build_compatibility_graph(n, t), opts);
      for (const auto& s : seeds) ASSERT_GE(r.max_size, s.family.size()) << s.name;
      const auto cert = certify_family(n, r.witness, t);
      ASSERT_TRUE(cert.valid);
      ASSERT_EQ(cert.size, r.max_size);
    }
}

TEST(Search, DeterministicAndSymmetryAgrees) {
  for (int t = 1; t <= 4; ++t) {
    const auto a = solve(5, t, false);
    const auto b = solve(5, t, false);
    const auto c = solve(5, t, false, true);
    EXPECT_EQ(a.max_size, b.max_size);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.stats.nodes, b.stats.nodes);
    EXPECT_EQ(a.max_size, c.max_size);
  }
}

TEST(Search, ProvenTrivialOptimaHaveBalancedCore) {
  for (int n = 3; n <= 5; ++n)
    for (int t = 2; t <= n - 2; ++t) {
      const auto r = solve(n, t, true);
      if (r.status != SearchStatus::kProvenOptimal || BigCount(r.max_size) != size_trivial(n, t)) continue;
      EdgeSet core = r.witness[0];
      for (const auto& m : r.witness) core &= m;
      EXPECT_EQ(profile_of(components_of(n, core)), balanced_profile(n, t)) << n << " " << t;
    }
}

TEST(Search, TimeLimitReportsBestFound) {
  SearchOptions opts;
  opts.time_limit_seconds = 0.0;
  opts.seeds = seed_constructions(6, 1);
  const auto r = search_max_family(build_compatibility_graph(6, 1), opts);
  EXPECT_EQ(r.status, SearchStatus::kBestFound);
  EXPECT_GE(r.max_size, 436u);
  EXPECT_TRUE(certify_family(6, r.witness, 1).valid);
}

TEST(Search, RejectsInvalidSeed) {
  SearchOptions opts;
  opts.seeds.push_back({"bad", TreeFamily::of_graph(4, {star_edges(4, 1), star_edges(4, 2)})});
  EXPECT_THROW(search_max_family(build_compatibility_graph(4, 2), opts), std::invalid_argument);
}

TEST(Seeds, Constructions) {
  const auto seeds = seed_constructions(5, 1);
  ASSERT_EQ(seeds.size(), 3u);
  EXPECT_EQ(seeds[0].name, "trivial-balanced");
  EXPECT_EQ(BigCount(seeds[0].family.size()), size_trivial(5, 1));
  EXPECT_EQ(seeds[2].family.size(), 53u);
  EXPECT_EQ(profile_of(components_of(7, balanced_forest(7, 4))), balanced_profile(7, 4));
}

TEST(Orbits, CountsMatchUnlabelledTrees) {
  // Unlabelled trees on 4, 5, 6 vertices: 2, 3, 6.
  const std::vector<std::pair<int, int>> expected{{4, 2}, {5, 3}, {6, 6}};
  for (auto [n, orbits] : expected) {
    const auto ids = tree_orbits(n, spanning_trees(n));
    EXPECT_EQ(*std::max_element(ids.begin(), ids.end()) + 1, orbits) << n;
  }
}

TEST(Certificate, Examples) {
  const auto fam = build_trivial(5, edge_set(5, {{1, 2}, {3, 4}}));
  const auto ok = certify_family(5, fam, 2);
  EXPECT_TRUE(ok.valid);
  EXPECT_EQ(ok.size, 20u);
  EXPECT_EQ(ok.hash.size(), 16u);

  auto members = fam.members();
  members.push_back(star_edges(5, 5));
  const auto bad = certify_family(5, TreeFamily::of_graph(5, members), 2);
  EXPECT_FALSE(bad.valid);
  ASSERT_TRUE(bad.violation.has_value());
  EXPECT_LT(bad.violation->size, 2);

  const auto empty = certify_family(5, TreeFamily::of_graph(5, {}), 2);
  EXPECT_TRUE(empty.valid);
  EXPECT_EQ(empty.size, 0u);

  const auto forest = certify_family(5, TreeFamily::of_graph(5, {edge_set(5, {{1, 2}})}), 0);
  EXPECT_FALSE(forest.valid);
  EXPECT_TRUE(forest.invalid_member.has_value());
}

TEST(Golden, SearchOptimaUpToFiveVertices) {
  std::ifstream in(TREEINT_GOLDEN_DIR "/search_n3_n5.json");
  ASSERT_TRUE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  const Json golden = Json::parse(ss.str());
  for (const auto& entry : golden["optima"]) {
    const int n = entry["n"].get<int>();
    const int t = entry["t"].get<int>();
    const auto r = solve(n, t, true);
    EXPECT_EQ(to_string(r.status), entry["status"].get<std::string>()) << n << " " << t;
    EXPECT_EQ(r.max_size, entry["max_size"].get<std::size_t>()) << n << " " << t;
    EXPECT_EQ(certify_family(n, r.witness, t).hash, entry["witness_hash"].get<std::string>()) << n << " " << t;
  }
}
