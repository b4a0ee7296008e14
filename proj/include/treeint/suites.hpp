#pragma once

// Verification suites. Each suite runs one family of exact checks with
// explicit parameter ranges and returns a Report that embeds its effective
// configuration. Output never depends on the worker count.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeint/counting.hpp"
#include "treeint/family.hpp"
#include "treeint/io.hpp"
#include "treeint/peeling.hpp"
#include "treeint/search.hpp"
#include "treeint/spread.hpp"
#include "treeint/tree.hpp"

namespace treeint {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct SuiteConfig {
  std::string suite;
  std::optional<int> n;
  std::optional<int> n_min;
  std::optional<int> n_max;
  std::optional<int> t;
  std::optional<int> instances;
  std::optional<std::uint64_t> trials;
  std::optional<double> time_limit;
  bool symmetry = false;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;  // execution only; never written into reports
};

namespace suites {

inline std::string dec(const BigCount& v) { return v.str(); }
inline std::string dec(std::uint64_t v) { return std::to_string(v); }

inline std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t instance) {
  return std::mt19937_64(trial_seed(seed, instance));
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Random spanning tree of K_n via a uniformly random Prüfer sequence.
inline EdgeSet random_tree(int n, std::mt19937_64& rng) {
  PruferSequence seq{n, {}};
  for (int i = 0; i < n - 2; ++i) seq.symbols.push_back(uniform(rng, 1, n));
  return prufer_decode(seq).edges();
}

// Random forest with `size` edges: a random subset of a random spanning tree.
inline EdgeSet random_forest(int n, int size, std::mt19937_64& rng) {
  auto edges = random_tree(n, rng).elements();
  std::shuffle(edges.begin(), edges.end(), rng);
  EdgeSet f;
  for (int i = 0; i < size; ++i) f.set(edges[i]);
  return f;
}

inline WideSet random_subset(int ground, int size, std::mt19937_64& rng) {
  std::vector<int> all(ground);
  for (int i = 0; i < ground; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  WideSet s;
  for (int i = 0; i < size; ++i) s.set(all[i]);
  return s;
}

inline Report cayley(const SuiteConfig& cfg) {
  Report rep;
  const int n_max = cfg.n_max.value_or(cfg.n.value_or(8));
  rep.config = {{"suite", "cayley"}, {"n_min", 2}, {"n_max", n_max}};
  for (int n = 2; n <= n_max; ++n) {
    const auto trees = all_spanning_trees(n, cfg.workers, std::max(n_max, kDefaultEnumerationCap));
    std::vector<EdgeSet> sorted = trees;
    std::sort(sorted.begin(), sorted.end());
    const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    bool all_trees = true;
    for (const auto& t : trees) all_trees = all_trees && is_spanning_tree(n, t);
    const std::uint64_t expected = cayley_count(n);
    rep.add({"cayley", {{"n", n}}, dec(static_cast<std::uint64_t>(trees.size())), dec(expected),
             distinct && all_trees && trees.size() == expected});
  }
  return rep;
}

inline Report oracle_count(const SuiteConfig& cfg) {
  Report rep;
  const int lo = cfg.n.value_or(cfg.n_min.value_or(4));
  const int hi = cfg.n.value_or(cfg.n_max.value_or(6));
  rep.config = {{"suite", "oracle-count"}, {"n_min", lo}, {"n_max", hi}};
  for (int n = lo; n <= hi; ++n) {
    const auto& trees = spanning_trees(n);
    std::vector<EdgeSet> forests;
    for (int s = 0; s <= n - 1; ++s) for_each_forest(n, s, [&](const EdgeSet& f) { forests.push_back(f); });
    constexpr std::size_t kChunk = 256;
    const std::size_t chunks = (forests.size() + kChunk - 1) / kChunk;
    auto bad = parallel_map(cfg.workers, chunks, [&](std::size_t c) {
      std::vector<std::pair<EdgeSet, std::uint64_t>> mismatches;
      for (std::size_t i = c * kChunk; i < std::min(forests.size(), (c + 1) * kChunk); ++i) {
        std::uint64_t count = 0;
        for (const auto& t : trees)
          if (forests[i].is_subset_of(t)) ++count;
        if (count_trees_containing(profile_of(components_of(n, forests[i]))) != count)
          mismatches.emplace_back(forests[i], count);
      }
      return mismatches;
    });
    std::size_t mismatches = 0;
    for (const auto& b : bad) {
      for (const auto& [f, count] : b)
        rep.add({"count-trees-mismatch", {{"n", n}, {"forest", set_to_json(f)}},
                 dec(count_trees_containing(profile_of(components_of(n, f)))), dec(count), false});
      mismatches += b.size();
    }
    rep.add({"count-trees-oracle", {{"n", n}, {"forests", forests.size()}},
             dec(static_cast<std::uint64_t>(forests.size() - mismatches)), dec(static_cast<std::uint64_t>(forests.size())),
             mismatches == 0});
  }
  return rep;
}

inline Report c_closed_form(const SuiteConfig& cfg) {
  Report rep;
  const int n_max = cfg.n_max.value_or(60);
  rep.config = {{"suite", "c-closed-form"}, {"n_min", 1}, {"n_max", n_max}};
  auto rows = parallel_map(cfg.workers, static_cast<std::size_t>(n_max), [&](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    int agree = 0;
    std::vector<ReportRow> out;
    for (int t = 0; t <= n - 1; ++t) {
      const BigCount closed = compute_c(n, t);
      const std::uint64_t exhaustive = max_partition_product(n, t);
      const bool balanced_ok = count_trees_containing(balanced_profile(n, t)) == size_trivial(n, t);
      if (closed == exhaustive && balanced_ok)
        ++agree;
      else
        out.push_back({"c-closed-form-mismatch", {{"n", n}, {"t", t}}, dec(closed), dec(exhaustive), false});
    }
    out.push_back({"c-closed-form", {{"n", n}}, std::to_string(agree), std::to_string(n), agree == n});
    return out;
  });
  for (auto& r : rows)
    for (auto& row : r) rep.add(std::move(row));
  return rep;
}

inline Report c_ratio(const SuiteConfig& cfg) {
  Report rep;
  const int n_max = cfg.n_max.value_or(200);
  const Rational e = e_upper_bound();
  rep.config = {{"suite", "c-ratio"}, {"n_max", n_max}, {"e_upper_bound", to_string(e)}};
  const auto scan = verify_c_ratio_bounds(n_max, cfg.workers);
  for (const auto& v : scan.violations)
    rep.add({v.check, {{"n", v.n}, {"t", v.t}, {"r", v.r}}, dec(v.lhs), dec(v.rhs), false});
  rep.add({"c-ratio-scan", {{"n_max", n_max}}, std::to_string(scan.violations.size()) + " violations",
           std::to_string(scan.checks) + " checks", scan.violations.empty()});
  return rep;
}

inline Report a_identity(const SuiteConfig& cfg) {
  Report rep;
  const int n_max = cfg.n_max.value_or(cfg.n.value_or(kDefaultExhaustiveCap));
  rep.config = {{"suite", "a-identity"}, {"n_min", 2}, {"n_max", n_max}};
  for (int n = 2; n <= n_max; ++n) {
    for (int t = 0; t <= n - 1; ++t) {
      std::map<int, BigCount> a;
      for (int r = 0; t + 2 * r <= n - 1; ++r) {
        const AResult res = compute_A_exact(n, t, r, n_max);
        a[r] = res.value;
        Json profiles = Json::array();
        for (const auto& p : res.maximizer_profiles) profiles.push_back(to_string(p));
        if (r == 0) {
          const bool balanced =
              res.maximizer_profiles.size() == 1 && *res.maximizer_profiles.begin() == balanced_profile(n, t);
          rep.add({"A(n,t,0)=c(n,t)n^(n-2-t)", {{"n", n}, {"t", t}, {"maximizer_profiles", profiles}},
                   dec(res.value), dec(size_trivial(n, t)), res.value == size_trivial(n, t) && balanced});
        } else {
          rep.add({"A(n,t,r)", {{"n", n}, {"t", t}, {"r", r}, {"argmax_profile", to_string(profile_of(components_of(n, res.argmax)))}},
                   dec(res.value), dec(a[0]), res.value < a[0], false});
        }
      }
    }
  }
  return rep;
}

inline Report hm(const SuiteConfig& cfg) {
  Report rep;
  const int lo = cfg.n_min.value_or(4);
  const int hi = cfg.n_max.value_or(7);
  rep.config = {{"suite", "hm"}, {"n_min", lo}, {"n_max", hi}, {"edge", "1-2"}};
  for (int n = lo; n <= hi; ++n) {
    const auto fam = build_HM_family(n, make_edge(1, 2, n));
    const bool inter = is_t_intersecting(fam, 1, cfg.workers);
    rep.add({"hm-size", {{"n", n}}, dec(static_cast<std::uint64_t>(fam.size())), dec(hm_family_size(n)),
             BigCount(fam.size()) == hm_family_size(n)});
    rep.add({"hm-1-intersecting", {{"n", n}}, inter ? "true" : "false", "true", inter});
  }
  return rep;
}

inline Report u_families(const SuiteConfig& cfg) {
  Report rep;
  const int n_max = cfg.n_max.value_or(cfg.n.value_or(kDefaultExhaustiveCap));
  rep.config = {{"suite", "u-families"}, {"n_min", 2}, {"n_max", n_max}, {"t_min", 1}};
  for (int n = 2; n <= n_max; ++n)
    for (int t = 1; t <= n - 1; ++t)
      for (int r = 0; t + 2 * r <= n - 1; ++r) {
        std::vector<EdgeSet> forests;
        for_each_forest(n, t + 2 * r, [&](const EdgeSet& f) { forests.push_back(f); });
        auto ok = parallel_map(cfg.workers, forests.size(), [&](std::size_t i) {
          return is_t_intersecting(build_U(n, t, r, forests[i]), t) ? 1 : 0;
        });
        const auto passed = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
        rep.add({"U-t-intersecting", {{"n", n}, {"t", t}, {"r", r}}, std::to_string(passed),
                 std::to_string(forests.size()), passed == forests.size()});
      }
  return rep;
}

inline Report avoiding_star(const SuiteConfig& cfg) {
  Report rep;
  const int samples = cfg.instances.value_or(100);
  rep.config = {{"suite", "avoiding-star"}, {"exhaustive_n", 6}, {"sampled_n", 7}, {"samples_per_t", samples},
                {"seed", cfg.seed}};
  auto run = [&](int n, int t, const std::vector<std::pair<EdgeSet, int>>& instances) {
    const BigCount bound = big_pow(BigCount(n - 1), static_cast<unsigned>(n - 2 - t));
    auto counts = parallel_map(cfg.workers, instances.size(), [&](std::size_t i) {
      const LabeledTree star(n, star_edges(n, instances[i].second));
      return count_low_star_intersection(n, instances[i].first, star, t);
    });
    BigCount min_count = counts.empty() ? BigCount(0) : *std::min_element(counts.begin(), counts.end());
    bool all = !counts.empty();
    for (const auto& c : counts) all = all && c > bound;
    rep.add({"avoiding-star", {{"n", n}, {"t", t}, {"instances", instances.size()}}, dec(min_count), dec(bound), all});
  };
  {
    const int n = 6;
    for (int t = 2; t <= n - 3; ++t) {
      std::vector<std::pair<EdgeSet, int>> inst;
      for_each_forest(n, t, [&](const EdgeSet& f) {
        for (int c = 1; c <= n; ++c)
          if (!f.is_subset_of(star_edges(n, c))) inst.emplace_back(f, c);
      });
      run(n, t, inst);
    }
  }
  {
    const int n = 7;
    for (int t = 2; t <= n - 3; ++t) {
      std::vector<std::pair<EdgeSet, int>> inst;
      auto rng = instance_rng(cfg.seed, static_cast<std::uint64_t>(t));
      while (static_cast<int>(inst.size()) < samples) {
        const EdgeSet f = random_forest(n, t, rng);
        const int c = uniform(rng, 1, n);
        if (!f.is_subset_of(star_edges(n, c))) inst.emplace_back(f, c);
      }
      run(n, t, inst);
    }
  }
  {
    // Raw count for the avoidance lemma; its bound n^(n-t-27) is vacuous at n = 7.
    const int n = 7;
    const EdgeSet f = edge_set(n, {{1, 2}, {3, 4}});
    const LabeledTree path(n, edge_set(n, {{1, 3}, {3, 5}, {5, 7}, {2, 7}, {2, 4}, {4, 6}}));
    const BigCount c = count_containing_avoiding(n, f, path);
    rep.add({"containing-avoiding", {{"n", n}, {"forest", "12,34"}, {"tree", "1-3-5-7-2-4-6"}}, dec(c), "1", c >= 1, false});
  }
  return rep;
}

inline SetFamily<WideSet> random_family(std::mt19937_64& rng, int ground, int max_size, int members) {
  std::vector<WideSet> sets;
  for (int i = 0; i < members; ++i) sets.push_back(random_subset(ground, uniform(rng, 1, max_size), rng));
  return SetFamily<WideSet>(ground, std::move(sets));
}

inline Report spread(const SuiteConfig& cfg) {
  Report rep;
  const int instances = cfg.instances.value_or(500);
  rep.config = {{"suite", "spread"}, {"instances", instances}, {"max_uniformity", 6}, {"max_ground", 18},
                {"seed", cfg.seed}};
  {
    const auto t4 = TreeFamily::of_graph(4, spanning_trees(4));
    const auto prof = spread_radius(t4);
    rep.add({"spread-radius(T_4)", {{"n", 4}, {"witness", set_to_json(prof.witness)}},
             std::to_string(prof.family_size) + "/" + std::to_string(prof.restricted_size) + "^(1/" +
                 std::to_string(prof.exponent) + ")",
             "2", prof.equals(Rational(2)) && prof.exponent == 1});
  }
  static const std::vector<Rational> alphas{Rational(5, 4), Rational(3, 2), Rational(2), Rational(3)};
  auto results = parallel_map(cfg.workers, static_cast<std::size_t>(instances), [&](std::size_t i) {
    auto rng = instance_rng(cfg.seed, i);
    const int k = uniform(rng, 1, 6);
    const int ground = uniform(rng, k + 1, 18);
    const int members = uniform(rng, 1, 80);
    const auto fam = random_family(rng, ground, k, members);
    const Rational alpha = alphas[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(alphas.size()) - 1))];
    const int uniformity = fam.max_member_size();
    // |F| > alpha^k
    const bool applies = BigCount(fam.size()) * big_pow(boost::multiprecision::denominator(alpha), uniformity) >
                         big_pow(boost::multiprecision::numerator(alpha), uniformity);
    const auto found = find_spread_restriction(fam, alpha);
    const bool spread_ok = is_r_spread(found.restricted, alpha);
    const bool ok = !applies || (spread_ok && found.restricted.size() >= 2);
    return std::pair<int, int>{applies ? 1 : 0, ok ? 1 : 0};
  });
  int applicable = 0, passed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    applicable += results[i].first;
    if (results[i].first) passed += results[i].second;
    if (!results[i].second) rep.add({"spread-restriction-failure", {{"instance", i}}, "0", "1", false});
  }
  rep.add({"spread-restriction-alpha-spread", {{"instances", instances}, {"applicable", applicable}},
           std::to_string(passed), std::to_string(applicable), passed == applicable});
  return rep;
}

struct SpreadLemmaSetup {
  bool pairs = false;
  Rational beta;
  Rational delta;
};

// Parameter sets for which the cover bound is positive once r * delta > 16.
inline const std::vector<SpreadLemmaSetup>& spread_lemma_setups() {
  static const std::vector<SpreadLemmaSetup> setups{
      {false, Rational(2), Rational(1, 4)},
      {true, Rational(1), Rational(1, 2)},
      {false, Rational(3), Rational(1, 4)},
      {true, Rational(3, 2), Rational(1, 2)},
  };
  return setups;
}

// All singletons of a ground set, or a dense random 2-uniform family.
inline SetFamily<WideSet> spread_lemma_family(std::mt19937_64& rng, bool pairs) {
  if (!pairs) {
    const int m = uniform(rng, 80, 250);
    std::vector<WideSet> sets;
    for (int i = 0; i < m; ++i) sets.push_back(WideSet{i});
    return SetFamily<WideSet>(m, std::move(sets));
  }
  const int m = uniform(rng, 80, 140);
  std::bernoulli_distribution keep(0.9);
  std::vector<WideSet> sets;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (keep(rng)) sets.push_back(WideSet{a, b});
  return SetFamily<WideSet>(m, std::move(sets));
}

inline Report spread_lemma(const SuiteConfig& cfg) {
  Report rep;
  const int instances = cfg.instances.value_or(20);
  const std::uint64_t trials = cfg.trials.value_or(10000);
  rep.config = {{"suite", "spread-lemma"}, {"instances", instances}, {"trials", trials}, {"min_r_delta", 16},
                {"seed", cfg.seed}};
  Json runs = Json::array();
  const auto& setups = spread_lemma_setups();
  for (int i = 0; i < instances; ++i) {
    const auto& setup = setups[static_cast<std::size_t>(i) % setups.size()];
    auto rng = instance_rng(cfg.seed, static_cast<std::uint64_t>(i));
    auto fam = spread_lemma_family(rng, setup.pairs);
    while (!spread_radius(fam).exceeds(Rational(16) / setup.delta)) fam = spread_lemma_family(rng, setup.pairs);
    const auto mc =
        monte_carlo_cover_probability(fam, setup.beta, setup.delta, trials, trial_seed(cfg.seed, 1000 + i), cfg.workers);
    Json run = monte_carlo_to_json(mc);
    run["instance"] = i;
    run["members"] = fam.size();
    run["beta"] = to_string(setup.beta);
    run["delta"] = to_string(setup.delta);
    runs.push_back(run);
    rep.add({"spread-lemma-cover", {{"instance", i}, {"members", fam.size()}, {"beta", to_string(setup.beta)},
                                    {"delta", to_string(setup.delta)}},
             json_double(mc.estimate + 3 * mc.sigma).dump(), json_double(mc.bound).dump(), mc.holds});
  }
  rep.sections["monte_carlo"] = std::move(runs);
  return rep;
}

inline Report disjoint(const SuiteConfig& cfg) {
  Report rep;
  const int instances = cfg.instances.value_or(200);
  rep.config = {{"suite", "disjoint"}, {"instances", instances}, {"uniformities", Json::array({1, 2})},
                {"seed", cfg.seed}};
  auto res = parallel_map(cfg.workers, static_cast<std::size_t>(instances), [&](std::size_t i) {
    auto rng = instance_rng(cfg.seed, i);
    const int k = (i % 2 == 0) ? 1 : 2;
    const Rational threshold(k == 1 ? 32 : 64);  // 2^5 log2(2k)
    auto make = [&] {
      while (true) {
        SetFamily<WideSet> fam;
        if (k == 1) {
          const int m = uniform(rng, 33, 256);
          const int s = uniform(rng, 33, m);
          std::vector<int> all(m);
          for (int e = 0; e < m; ++e) all[e] = e;
          std::shuffle(all.begin(), all.end(), rng);
          std::vector<WideSet> sets;
          for (int e = 0; e < s; ++e) sets.push_back(WideSet{all[e]});
          fam = SetFamily<WideSet>(m, std::move(sets));
        } else {
          const int m = uniform(rng, 140, 220);
          std::bernoulli_distribution keep(0.97);
          std::vector<WideSet> sets;
          for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
              if (keep(rng)) sets.push_back(WideSet{a, b});
          fam = SetFamily<WideSet>(m, std::move(sets));
        }
        if (spread_radius(fam).exceeds(threshold)) return fam;
      }
    };
    const auto g1 = make();
    const auto g2 = make();
    const auto pair = find_disjoint_pair(g1, g2);
    return pair.has_value() && !pair->first.intersects(pair->second);
  });
  const auto found = static_cast<std::size_t>(std::count(res.begin(), res.end(), true));
  rep.add({"disjoint-pair-found", {{"instances", instances}}, std::to_string(found), std::to_string(instances),
           found == static_cast<std::size_t>(instances)});
  return rep;
}

struct PeelInstance {
  SetFamily<WideSet> family;
  int t = 0;
  std::vector<WideSet> reference;
};

// t-intersecting families with members of size <= 10: subsets of trees of K_6
// containing a random core, U-type families around a random set, and random
// greedily grown families.
inline PeelInstance peel_instance(std::uint64_t seed, std::size_t index) {
  auto rng = instance_rng(seed, index);
  PeelInstance inst;
  switch (index % 3) {
    case 0: {
      const int n = 6;
      inst.t = uniform(rng, 1, 3);
      const EdgeSet core = random_forest(n, inst.t, rng);
      std::vector<WideSet> members;
      const int count = uniform(rng, 2, 25);
      for (int i = 0; i < count; ++i) {
        EdgeSet tree;
        do tree = random_tree(n, rng);
        while (!core.is_subset_of(tree));
        EdgeSet m = core;
        tree.for_each([&](int e) {
          if (uniform(rng, 0, 1) == 1) m.set(e);
        });
        members.push_back(convert_set<WideSet>(m));
      }
      inst.family = SetFamily<WideSet>(pair_count(n), std::move(members));
      for (const auto& t : spanning_trees(n)) inst.reference.push_back(convert_set<WideSet>(t));
      break;
    }
    case 1: {
      inst.t = uniform(rng, 1, 3);
      const int r = uniform(rng, 1, 2);
      const int ground = uniform(rng, inst.t + 2 * r + 2, 16);
      const WideSet core = random_subset(ground, inst.t + 2 * r, rng);
      const auto core_elems = core.elements();
      std::vector<WideSet> members;
      const int count = uniform(rng, 2, 20);
      for (int i = 0; i < count; ++i) {
        auto pick = core_elems;
        std::shuffle(pick.begin(), pick.end(), rng);
        WideSet m;
        for (int j = 0; j < inst.t + r; ++j) m.set(pick[j]);
        const int extra = uniform(rng, 0, 10 - (inst.t + r));
        for (int j = 0; j < extra; ++j) m.set(uniform(rng, 0, ground - 1));
        if (m.count() > 10) continue;
        members.push_back(m);
      }
      inst.family = SetFamily<WideSet>(ground, std::move(members));
      break;
    }
    default: {
      inst.t = uniform(rng, 1, 3);
      const int ground = uniform(rng, inst.t + 3, 14);
      std::vector<WideSet> members;
      for (int attempt = 0; attempt < 200 && members.size() < 30; ++attempt) {
        const WideSet cand = random_subset(ground, uniform(rng, inst.t, std::min(10, ground)), rng);
        bool ok = true;
        for (const auto& m : members) ok = ok && m.intersection_count(cand) >= inst.t;
        if (ok) members.push_back(cand);
      }
      inst.family = SetFamily<WideSet>(ground, std::move(members));
      break;
    }
  }
  if (inst.reference.empty()) {
    const int ground = inst.family.ground();
    for (const auto& m : inst.family) {
      WideSet a = m;
      for (int j = 0; j < 3; ++j) a.set(uniform(rng, 0, ground - 1));
      inst.reference.push_back(a);
      inst.reference.push_back(m);
    }
    for (int j = 0; j < 100; ++j) inst.reference.push_back(random_subset(ground, uniform(rng, 1, ground), rng));
  }
  return inst;
}

struct PeelOutcome {
  bool ok = false;
  bool idempotent = false;
  int levels = 0;
};

inline PeelOutcome run_peel_instance(const PeelInstance& inst) {
  PeelOutcome out;
  const int q = std::max(inst.t, inst.family.max_member_size());
  const auto trace = peel(inst.family, inst.t, q);
  const auto report = verify_trace(trace, std::span<const WideSet>(inst.reference));
  out.ok = report.ok;
  out.levels = static_cast<int>(trace.levels.size());
  const auto reduced = maximal_reduce(inst.family, inst.t);
  out.idempotent = maximal_reduce(reduced, inst.t) == reduced;
  for (std::size_t i = 1; i < trace.levels.size(); ++i)
    out.idempotent = out.idempotent && maximal_reduce(trace.levels[i].h, inst.t) == trace.levels[i].h;
  return out;
}

inline Report peeling(const SuiteConfig& cfg) {
  Report rep;
  const int instances = cfg.instances.value_or(200);
  rep.config = {{"suite", "peeling"}, {"instances", instances}, {"max_member_size", 10}, {"seed", cfg.seed}};
  auto res = parallel_map(cfg.workers, static_cast<std::size_t>(instances),
                          [&](std::size_t i) { return run_peel_instance(peel_instance(cfg.seed, i)); });
  int ok = 0, idem = 0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    ok += res[i].ok;
    idem += res[i].idempotent;
    if (!res[i].ok || !res[i].idempotent)
      rep.add({"peel-instance-failure", {{"instance", i}}, res[i].ok ? "trace ok" : "trace failed",
               res[i].idempotent ? "idempotent" : "not idempotent", false});
  }
  rep.add({"peel-trace-invariants", {{"instances", instances}}, std::to_string(ok), std::to_string(instances),
           ok == instances});
  rep.add({"maximal-reduce-idempotent", {{"instances", instances}}, std::to_string(idem), std::to_string(instances),
           idem == instances});
  return rep;
}

inline Report f_bound(const SuiteConfig& cfg) {
  Report rep;
  const int n = cfg.n.value_or(10000);
  const int t = cfg.t.value_or(5000);
  const int k_lo = 500, k_hi = 1000, k_step = 50;
  const int small_t = 10000, small_n = 20000;
  rep.config = {{"suite", "f-bound"}, {"n", n}, {"t", t}, {"k_lo", k_lo}, {"k_hi", k_hi}, {"k_step", k_step},
                {"small_k_t", small_t}, {"small_k_n", small_n}};
  for (const auto& row : peel_bound_scan(n, t, k_lo, k_hi, k_step, cfg.workers))
    rep.add({"(k+1)f(j0)2^k/n^k<=2^-k", {{"n", n}, {"t", t}, {"k", row.k}, {"j0", row.j0}}, dec(row.lhs), dec(row.rhs),
             row.holds});
  const int k_max = small_k_limit(small_t);
  Rational worst = 0;
  int worst_k = 0;
  for (int k = 1; k <= k_max; ++k) {
    const auto row = peel_bound_at(small_n, small_t, k);
    if (row.bound > worst) {
      worst = row.bound;
      worst_k = k;
    }
  }
  rep.add({"max-B(k)-for-k<t^0.01", {{"n", small_n}, {"t", small_t}, {"k_max", k_max}, {"argmax_k", worst_k}},
           to_string(worst), "O(1)", true, false});
  return rep;
}

inline Report search(const SuiteConfig& cfg) {
  Report rep;
  const int n_min = cfg.n_min.value_or(3);
  const int n_max = cfg.n_max.value_or(cfg.n.value_or(5));
  const double limit = cfg.time_limit.value_or(60.0);
  rep.config = {{"suite", "search"}, {"n_min", n_min}, {"n_max", n_max}, {"time_limit", limit},
                {"symmetry", cfg.symmetry}};
  Json results = Json::array();
  for (int n = n_min; n <= n_max; ++n)
    for (int t = 1; t <= n - 1; ++t) {
      const auto g = build_compatibility_graph(n, t, std::max(n_max, kDefaultSearchCap), cfg.workers);
      SearchOptions opts;
      opts.time_limit_seconds = limit;
      opts.symmetry = cfg.symmetry;
      opts.seeds = seed_constructions(n, t, std::max(n_max, kDefaultExhaustiveCap));
      std::size_t best_seed = 0;
      for (const auto& s : opts.seeds) best_seed = std::max(best_seed, s.family.size());
      const auto res = search_max_family(g, opts);
      const auto cert = certify_family(n, res.witness, t);
      const bool proven = res.status == SearchStatus::kProvenOptimal;
      rep.add({"search-max", {{"n", n}, {"t", t}, {"status", to_string(res.status)}, {"source", res.witness_source}},
               std::to_string(res.max_size), std::to_string(best_seed),
               res.max_size >= best_seed && cert.valid && cert.size == res.max_size});
      const BigCount trivial = size_trivial(n, t);
      rep.add({"optimum-vs-trivial", {{"n", n}, {"t", t}}, std::to_string(res.max_size), dec(trivial),
               BigCount(res.max_size) == trivial, false});
      if (t == 1)
        rep.add({"optimum-vs-stars-plus-edge", {{"n", n}}, std::to_string(res.max_size), dec(hm_family_size(n)),
                 BigCount(res.max_size) == hm_family_size(n), false});
      if (proven && BigCount(res.max_size) == trivial && t <= n - 2) {
        EdgeSet core = res.witness.members().front();
        for (const auto& m : res.witness) core &= m;
        bool balanced = false;
        try {
          balanced = profile_of(components_of(n, core)) == balanced_profile(n, t);
        } catch (const CycleError&) {
        }
        rep.add({"witness-core-balanced", {{"n", n}, {"t", t}}, to_string(profile_of(components_of(n, core))),
                 to_string(balanced_profile(n, t)), balanced});
      }
      Json r = search_to_json(res, false);
      r["n"] = n;
      r["t"] = t;
      r["certificate"] = certificate_to_json(cert);
      r.erase("witness");
      results.push_back(std::move(r));
    }
  rep.sections["search"] = std::move(results);
  return rep;
}

struct SuiteEntry {
  std::string name;
  std::function<Report(const SuiteConfig&)> run;
};

inline const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {"cayley", cayley},           {"oracle-count", oracle_count}, {"c-closed-form", c_closed_form},
      {"c-ratio", c_ratio},         {"a-identity", a_identity},     {"hm", hm},
      {"u-families", u_families},   {"avoiding-star", avoiding_star}, {"spread", spread},
      {"spread-lemma", spread_lemma}, {"disjoint", disjoint},       {"peeling", peeling},
      {"f-bound", f_bound},         {"search", search},
  };
  return entries;
}

}  // namespace suites

inline std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& e : suites::registry()) names.push_back(e.name);
  names.emplace_back("all");
  return names;
}

inline Report run_suite(const SuiteConfig& cfg) {
  if (cfg.suite == "all") {
    Report rep;
    rep.command = "verify";
    rep.config = {{"suite", "all"}, {"seed", cfg.seed}};
    Json configs = Json::object();
    for (const auto& e : suites::registry()) {
      SuiteConfig sub = cfg;
      sub.suite = e.name;
      Report r = e.run(sub);
      if (!r.config.contains("seed")) r.config["seed"] = cfg.seed;
      configs[e.name] = r.config;
      rep.append(r, e.name);
    }
    rep.config["suites"] = std::move(configs);
    return rep;
  }
  for (const auto& e : suites::registry())
    if (e.name == cfg.suite) {
      Report rep = e.run(cfg);
      rep.command = "verify";
      if (!rep.config.contains("seed")) rep.config["seed"] = cfg.seed;
      return rep;
    }
  throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
}

}  // namespace treeint
