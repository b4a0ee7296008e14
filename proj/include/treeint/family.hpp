#pragma once

// Families of edge sets (trees, forests) and of general sets, the
// t-intersection predicate, restrictions, and the candidate extremal
// constructions for t-intersecting families of spanning trees.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeint/bitset.hpp"
#include "treeint/counting.hpp"
#include "treeint/parallel.hpp"
#include "treeint/tree.hpp"

namespace treeint {

// A deduplicated collection of sets, stored in canonical (numeric) order.
// `vertices` is n for families of edge sets of K_n and 0 for general set
// systems over {0, ..., ground-1}.
template <class Set>
class SetFamily {
 public:
  SetFamily() = default;

  SetFamily(int ground, std::vector<Set> members, int vertices = 0)
      : ground_(ground), vertices_(vertices), members_(std::move(members)) {
    if (ground < 0 || static_cast<std::size_t>(ground) > Set::kCapacity)
      throw std::out_of_range("ground size " + std::to_string(ground) + " exceeds set capacity");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (const auto& m : members_)
      if (m.highest() >= ground_) throw std::out_of_range("member element outside the ground set");
  }

  static SetFamily of_graph(int n, std::vector<Set> members) { return SetFamily(pair_count(n), std::move(members), n); }

  [[nodiscard]] int ground() const { return ground_; }
  [[nodiscard]] int vertices() const { return vertices_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] bool empty() const { return members_.empty(); }
  [[nodiscard]] const std::vector<Set>& members() const { return members_; }
  [[nodiscard]] const Set& operator[](std::size_t i) const { return members_[i]; }
  [[nodiscard]] auto begin() const { return members_.begin(); }
  [[nodiscard]] auto end() const { return members_.end(); }

  [[nodiscard]] bool contains(const Set& s) const { return std::binary_search(members_.begin(), members_.end(), s); }

  [[nodiscard]] int max_member_size() const {
    int k = 0;
    for (const auto& m : members_) k = std::max(k, m.count());
    return k;
  }

  // Union of all members.
  [[nodiscard]] Set support() const {
    Set s;
    for (const auto& m : members_) s |= m;
    return s;
  }

  [[nodiscard]] SetFamily with_members(std::vector<Set> members) const {
    return SetFamily(ground_, std::move(members), vertices_);
  }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  int ground_ = 0;
  int vertices_ = 0;
  std::vector<Set> members_;
};

using TreeFamily = SetFamily<EdgeSet>;

template <class Set>
struct IntersectionWitness {
  Set a;
  Set b;
  int size = 0;
};

// The first pair (i <= j) in canonical order with |A_i ∩ A_j| < t. A member is
// paired with itself too, so members smaller than t are reported.
template <class Set>
std::optional<IntersectionWitness<Set>> t_intersection_violation(const SetFamily<Set>& fam, int t, int workers = 1) {
  if (t < 0) throw std::invalid_argument("t must be non-negative");
  const auto& m = fam.members();
  const std::size_t rows = m.size();
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (rows + kChunk - 1) / kChunk;
  auto hits = parallel_map(workers, chunks, [&](std::size_t c) -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t i = c * kChunk; i < std::min(rows, (c + 1) * kChunk); ++i)
      for (std::size_t j = i; j < rows; ++j)
        if (m[i].intersection_count(m[j]) < t) return std::pair{i, j};
    return std::nullopt;
  });
  for (const auto& h : hits)
    if (h) return IntersectionWitness<Set>{m[h->first], m[h->second], m[h->first].intersection_count(m[h->second])};
  return std::nullopt;
}

template <class Set>
bool is_t_intersecting(const SetFamily<Set>& fam, int t, int workers = 1) {
  return !t_intersection_violation(fam, t, workers).has_value();
}

// Smallest |A ∩ B| over distinct members; nullopt for fewer than two members.
template <class Set>
std::optional<int> min_pairwise_intersection(const SetFamily<Set>& fam) {
  std::optional<int> best;
  const auto& m = fam.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const int c = m[i].intersection_count(m[j]);
      if (!best || c < *best) best = c;
    }
  return best;
}

template <class Set>
bool is_antichain(const SetFamily<Set>& fam) {
  const auto& m = fam.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j && m[i].is_subset_of(m[j])) return false;
  return true;
}

// F[X]: members containing X.
template <class Set>
SetFamily<Set> subfamily_containing(const SetFamily<Set>& fam, const Set& x) {
  std::vector<Set> out;
  for (const auto& a : fam)
    if (x.is_subset_of(a)) out.push_back(a);
  return fam.with_members(std::move(out));
}

// F(X): members containing X, with X removed.
template <class Set>
SetFamily<Set> restriction(const SetFamily<Set>& fam, const Set& x) {
  std::vector<Set> out;
  for (const auto& a : fam)
    if (x.is_subset_of(a)) out.push_back(a - x);
  return fam.with_members(std::move(out));
}

// F[S] for a family S of sets: members containing at least one set of S.
template <class Set>
SetFamily<Set> subfamily_containing_any(const SetFamily<Set>& fam, std::span<const Set> covers) {
  std::vector<Set> out;
  for (const auto& a : fam)
    for (const auto& s : covers)
      if (s.is_subset_of(a)) {
        out.push_back(a);
        break;
      }
  return fam.with_members(std::move(out));
}

// Cached T_n as a vector in Prüfer-lexicographic order.
inline const std::vector<EdgeSet>& spanning_trees(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<EdgeSet>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, all_spanning_trees(n, 1, kMaxVertices)).first;
  return it->second;
}

// Calls fn(edges) for every acyclic edge set of K_n with exactly `size` edges,
// in increasing numeric order of the bitset.
template <class Fn>
void for_each_forest(int n, int size, Fn&& fn) {
  check_vertex_count(n, 1);
  const int e = pair_count(n);
  if (size < 0 || size > n - 1) return;
  if (size == 0) {
    fn(EdgeSet{});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << e;
  std::uint64_t mask = (std::uint64_t{1} << size) - 1;
  while (mask < limit) {
    EdgeSet s;
    for (std::uint64_t w = mask; w != 0; w &= w - 1) s.set(std::countr_zero(w));
    if (is_acyclic(n, s)) fn(s);
    // Gosper's hack: next mask with the same popcount.
    const std::uint64_t c = mask & (~mask + 1);
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

inline Forest require_forest(int n, const EdgeSet& edges) { return components_of(n, edges); }

// T_n[F]: every spanning tree containing the forest F.
inline TreeFamily build_trivial(int n, const EdgeSet& forest) {
  require_forest(n, forest);
  std::vector<EdgeSet> out;
  for (const auto& t : spanning_trees(n))
    if (forest.is_subset_of(t)) out.push_back(t);
  return TreeFamily::of_graph(n, std::move(out));
}

// U(n,t,r,F): trees meeting the (t+2r)-edge forest F in at least t+r edges.
inline TreeFamily build_U(int n, int t, int r, const EdgeSet& forest) {
  if (t < 0 || r < 0) throw std::invalid_argument("t and r must be non-negative");
  if (forest.count() != t + 2 * r)
    throw std::invalid_argument("forest must have t+2r = " + std::to_string(t + 2 * r) + " edges");
  require_forest(n, forest);
  std::vector<EdgeSet> out;
  for (const auto& tree : spanning_trees(n))
    if (tree.intersection_count(forest) >= t + r) out.push_back(tree);
  return TreeFamily::of_graph(n, std::move(out));
}

inline constexpr int kDefaultExhaustiveCap = 6;

struct AResult {
  BigCount value;
  EdgeSet argmax;                                 // first maximizer in canonical order
  std::uint64_t maximizers = 0;
  std::set<ComponentProfile> maximizer_profiles;  // distinct profiles over all maximizers
  std::uint64_t forests_scanned = 0;
};

// A(n,t,r): the largest |U(n,t,r,F)| over all forests F with t+2r edges.
inline AResult compute_A_exact(int n, int t, int r, int cap = kDefaultExhaustiveCap) {
  check_vertex_count(n, 2);
  if (n > cap) throw std::out_of_range("n=" + std::to_string(n) + " exceeds exhaustive cap " + std::to_string(cap));
  if (t < 0 || r < 0 || t + 2 * r > n - 1) throw std::out_of_range("need t, r >= 0 and t+2r <= n-1");
  const auto& trees = spanning_trees(n);
  AResult res;
  std::uint64_t best = 0;
  for_each_forest(n, t + 2 * r, [&](const EdgeSet& f) {
    ++res.forests_scanned;
    std::uint64_t count = 0;
    for (const auto& tree : trees)
      if (tree.intersection_count(f) >= t + r) ++count;
    const ComponentProfile prof = profile_of(components_of(n, f));
    if (count > best || res.maximizers == 0) {
      best = count;
      res.argmax = f;
      res.maximizers = 1;
      res.maximizer_profiles = {prof};
    } else if (count == best) {
      ++res.maximizers;
      res.maximizer_profiles.insert(prof);
    }
  });
  res.value = best;
  return res;
}

// The n full stars of K_n.
inline TreeFamily build_star_family(int n) {
  if (n < 3) throw std::out_of_range("star family requires n >= 3");
  std::vector<EdgeSet> stars;
  for (int v = 1; v <= n; ++v) stars.push_back(star_edges(n, v));
  return TreeFamily::of_graph(n, std::move(stars));
}

// All stars plus all trees containing the edge e.
inline TreeFamily build_HM_family(int n, const Edge& e) {
  if (n < 3) throw std::out_of_range("HM family requires n >= 3");
  EdgeSet fixed;
  fixed.set(make_edge(e.u, e.v, n).index);
  auto members = build_trivial(n, fixed).members();
  for (const auto& s : build_star_family(n)) members.push_back(s);
  return TreeFamily::of_graph(n, std::move(members));
}

inline BigCount hm_family_size(int n) {
  return 2 * big_pow(BigCount(n), static_cast<unsigned>(n - 3)) + (n - 2);
}

// Trees S with F ⊆ S and S ∩ (T \ F) = ∅. Requires F ⊄ T.
inline BigCount count_containing_avoiding(int n, const EdgeSet& forest, const LabeledTree& tree) {
  require_forest(n, forest);
  if (tree.n() != n) throw std::invalid_argument("tree has a different vertex count");
  if (forest.is_subset_of(tree.edges())) throw std::invalid_argument("forest is contained in the tree");
  const EdgeSet avoid = tree.edges() - forest;
  std::uint64_t count = 0;
  for (const auto& s : spanning_trees(n))
    if (forest.is_subset_of(s) && !s.intersects(avoid)) ++count;
  return count;
}

// Trees containing F that share fewer than t edges with the full star S.
// Requires |F| = t, 1 < t <= n-3 and F ⊄ S.
inline BigCount count_low_star_intersection(int n, const EdgeSet& forest, const LabeledTree& star, int t) {
  require_forest(n, forest);
  if (star.n() != n || star.star_center() == 0) throw std::invalid_argument("S must be a full star of K_n");
  if (!(1 < t && t <= n - 3)) throw std::out_of_range("t must satisfy 1 < t <= n-3");
  if (forest.count() != t) throw std::invalid_argument("forest must have exactly t edges");
  if (forest.is_subset_of(star.edges())) throw std::invalid_argument("forest is contained in the star");
  std::uint64_t count = 0;
  for (const auto& s : spanning_trees(n))
    if (forest.is_subset_of(s) && s.intersection_count(star.edges()) < t) ++count;
  return count;
}

}  // namespace treeint
