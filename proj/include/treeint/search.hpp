#pragma once

// Exact maximum t-intersecting families of spanning trees at small n, as
// maximum cliques of the compatibility graph (trees adjacent iff they share at
// least t edges), found by bitset branch and bound with greedy-colouring bounds.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeint/family.hpp"
#include "treeint/parallel.hpp"
#include "treeint/tree.hpp"

namespace treeint {

inline constexpr int kDefaultSearchCap = 6;

// Flat bitset rows over a fixed vertex count.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::size_t words() const { return words_; }
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  [[nodiscard]] bool test(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U; }
  [[nodiscard]] const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }

  [[nodiscard]] std::size_t degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(row(i)[w]);
    return d;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct CompatibilityGraph {
  int n = 0;
  int t = 0;
  std::vector<EdgeSet> vertices;  // T_n in Prüfer-lexicographic order
  BitMatrix adjacency;            // symmetric, irreflexive

  [[nodiscard]] std::size_t edge_count() const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) e += adjacency.degree(i);
    return e / 2;
  }
};

inline CompatibilityGraph build_compatibility_graph(int n, int t, int cap = kDefaultSearchCap, int workers = 1) {
  check_vertex_count(n, 2);
  if (n > cap) throw std::out_of_range("n=" + std::to_string(n) + " exceeds search cap " + std::to_string(cap));
  check_nt(n, t);
  CompatibilityGraph g;
  g.n = n;
  g.t = t;
  g.vertices = spanning_trees(n);
  const std::size_t count = g.vertices.size();
  g.adjacency = BitMatrix(count);
  auto rows = parallel_map(workers, count, [&](std::size_t i) {
    std::vector<std::uint64_t> row(g.adjacency.words(), 0);
    for (std::size_t j = 0; j < count; ++j)
      if (j != i && g.vertices[i].intersection_count(g.vertices[j]) >= t) row[j / 64] |= std::uint64_t{1} << (j % 64);
    return row;
  });
  for (std::size_t i = 0; i < count; ++i) std::copy(rows[i].begin(), rows[i].end(), g.adjacency.row(i));
  return g;
}

enum class SearchStatus { kProvenOptimal, kBestFound };

inline std::string to_string(SearchStatus s) { return s == SearchStatus::kProvenOptimal ? "proven-optimal" : "best-found"; }

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  double wall_seconds = 0;
};

struct SeedConstruction {
  std::string name;
  TreeFamily family;
};

struct SearchResult {
  std::size_t max_size = 0;
  TreeFamily witness;
  SearchStatus status = SearchStatus::kBestFound;
  std::string witness_source;  // "search" or the seed construction's name
  SearchStats stats;
};

struct SearchOptions {
  std::optional<double> time_limit_seconds;  // nullopt = unlimited
  bool symmetry = false;                     // orbit-based root branching
  std::vector<SeedConstruction> seeds;
};

// Forest with n-t components on consecutive vertex blocks of balanced sizes, each block a path.
inline EdgeSet balanced_forest(int n, int t) {
  const ComponentProfile p = balanced_profile(n, t);
  EdgeSet f;
  int v = 1;
  for (int q : p.sizes) {
    for (int i = 0; i + 1 < q; ++i) f.set(make_edge(v + i, v + i + 1, n).index);
    v += q;
  }
  return f;
}

// Trivial family over a balanced forest, the best U(n,t,1,F), and the
// stars-plus-edge family when t = 1.
inline std::vector<SeedConstruction> seed_constructions(int n, int t, int cap = kDefaultExhaustiveCap) {
  std::vector<SeedConstruction> seeds;
  seeds.push_back({"trivial-balanced", build_trivial(n, balanced_forest(n, t))});
  if (t >= 1 && t + 2 <= n - 1 && n <= cap) {
    const AResult a = compute_A_exact(n, t, 1, cap);
    seeds.push_back({"U-r1", build_U(n, t, 1, a.argmax)});
  }
  if (t == 1 && n >= 3) seeds.push_back({"stars-plus-edge", build_HM_family(n, make_edge(1, 2, n))});
  return seeds;
}

// Orbit id of every tree under relabelling of the vertices, numbered in order
// of first appearance.
inline std::vector<int> tree_orbits(int n, const std::vector<EdgeSet>& trees) {
  const EdgeTable table(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::map<EdgeSet, int> orbit_of_canon;
  std::vector<int> orbit(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const auto edges = trees[i].elements();
    EdgeSet canon;
    bool first = true;
    for (const auto& p : perms) {
      EdgeSet img;
      for (int e : edges) img.set(table.index(p[table.edge(e).u - 1], p[table.edge(e).v - 1]));
      if (first || img < canon) canon = img;
      first = false;
    }
    auto [it, inserted] = orbit_of_canon.emplace(canon, static_cast<int>(orbit_of_canon.size()));
    orbit[i] = it->second;
  }
  return orbit;
}

namespace detail {

class CliqueSearch {
 public:
  CliqueSearch(const CompatibilityGraph& g, const SearchOptions& opts) : g_(g), opts_(opts) {
    const std::size_t n = g.vertices.size();
    // Branch order: descending degree, ties by index.
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::vector<std::size_t> deg(n);
    for (std::size_t i = 0; i < n; ++i) deg[i] = g.adjacency.degree(i);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
    adj_ = BitMatrix(n);
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order_[i]] = i;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (g.adjacency.test(order_[i], order_[j])) adj_.set(i, j);
    words_ = adj_.words();
    start_ = std::chrono::steady_clock::now();
  }

  SearchResult run() {
    SearchResult res;
    for (const auto& s : opts_.seeds)
      if (s.family.size() > best_size_) {
        best_size_ = s.family.size();
        res.witness = s.family;
        res.witness_source = s.name;
      }
    const std::size_t n = g_.vertices.size();
    if (n > 0 && best_size_ == 0) {
      best_size_ = 1;
      best_.assign(1, 0);
      res.witness_source = "search";
    }
    std::vector<std::uint64_t> p(words_, 0);
    std::vector<std::size_t> clique;
    if (opts_.symmetry) {
      const auto orbit_of_vertex = tree_orbits(g_.n, g_.vertices);
      std::vector<int> orbit(n);
      for (std::size_t i = 0; i < n; ++i) orbit[i] = orbit_of_vertex[order_[i]];
      // Representative = first vertex of the orbit in branch order.
      std::vector<std::size_t> reps;
      std::vector<bool> seen(static_cast<std::size_t>(*std::max_element(orbit.begin(), orbit.end())) + 1, false);
      for (std::size_t i = 0; i < n; ++i)
        if (!seen[orbit[i]]) {
          seen[orbit[i]] = true;
          reps.push_back(i);
        }
      std::vector<bool> excluded_orbit(seen.size(), false);
      for (std::size_t r : reps) {
        std::fill(p.begin(), p.end(), 0);
        const std::uint64_t* nr = adj_.row(r);
        for (std::size_t v = 0; v < n; ++v)
          if (((nr[v / 64] >> (v % 64)) & 1U) && !excluded_orbit[orbit[v]]) p[v / 64] |= std::uint64_t{1} << (v % 64);
        clique.assign(1, r);
        ++stats_.nodes;
        if (clique.size() > best_size_) record(clique);
        expand(clique, p);
        excluded_orbit[orbit[r]] = true;
        if (aborted_) break;
      }
    } else {
      for (std::size_t v = 0; v < n; ++v) p[v / 64] |= std::uint64_t{1} << (v % 64);
      expand(clique, p);
    }
    if (!best_.empty()) {
      std::vector<EdgeSet> members;
      for (std::size_t v : best_) members.push_back(g_.vertices[order_[v]]);
      res.witness = TreeFamily::of_graph(g_.n, std::move(members));
      res.witness_source = "search";
    }
    res.max_size = best_size_;
    res.status = aborted_ ? SearchStatus::kBestFound : SearchStatus::kProvenOptimal;
    stats_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    res.stats = stats_;
    return res;
  }

 private:
  void record(const std::vector<std::size_t>& clique) {
    best_size_ = clique.size();
    best_ = clique;
  }

  bool out_of_time() {
    if (!opts_.time_limit_seconds) return false;
    if ((stats_.nodes & 1023U) != 0) return aborted_;
    const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (el > *opts_.time_limit_seconds) aborted_ = true;
    return aborted_;
  }

  void expand(std::vector<std::size_t>& clique, std::vector<std::uint64_t>& p) {
    ++stats_.nodes;
    if (aborted_ || out_of_time()) return;
    std::vector<std::size_t> verts;
    std::vector<std::size_t> colors;
    colour(p, verts, colors);
    for (std::size_t i = verts.size(); i-- > 0;) {
      if (clique.size() + colors[i] <= best_size_) {
        ++stats_.prunes;
        return;
      }
      const std::size_t v = verts[i];
      clique.push_back(v);
      std::vector<std::uint64_t> np(words_);
      const std::uint64_t* nv = adj_.row(v);
      bool any = false;
      for (std::size_t w = 0; w < words_; ++w) {
        np[w] = p[w] & nv[w];
        any = any || np[w] != 0;
      }
      if (!any) {
        if (clique.size() > best_size_) record(clique);
      } else {
        expand(clique, np);
      }
      clique.pop_back();
      p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      if (aborted_) return;
    }
  }

  // Sequential greedy colouring in branch order; colours are non-decreasing along `verts`.
  void colour(const std::vector<std::uint64_t>& p, std::vector<std::size_t>& verts, std::vector<std::size_t>& colors) const {
    std::vector<std::uint64_t> uncoloured = p;
    std::vector<std::uint64_t> q(words_);
    std::size_t c = 0;
    auto nonempty = [&](const std::vector<std::uint64_t>& b) {
      for (auto w : b)
        if (w != 0) return true;
      return false;
    };
    while (nonempty(uncoloured)) {
      ++c;
      q = uncoloured;
      for (std::size_t w = 0; w < words_; ++w) {
        while (q[w] != 0) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
          q[w] &= q[w] - 1;
          uncoloured[v / 64] &= ~(std::uint64_t{1} << (v % 64));
          const std::uint64_t* nv = adj_.row(v);
          for (std::size_t x = w; x < words_; ++x) q[x] &= ~nv[x];
          verts.push_back(v);
          colors.push_back(c);
        }
      }
    }
  }

  const CompatibilityGraph& g_;
  const SearchOptions& opts_;
  std::vector<std::size_t> order_;
  BitMatrix adj_;
  std::size_t words_ = 0;
  std::size_t best_size_ = 0;
  std::vector<std::size_t> best_;
  SearchStats stats_;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Seeds only raise the initial lower bound; the witness stays the seed
// construction unless the search finds a strictly larger clique.
inline SearchResult search_max_family(const CompatibilityGraph& g, const SearchOptions& opts = {}) {
  for (const auto& s : opts.seeds)
    if (!is_t_intersecting(s.family, g.t)) throw std::invalid_argument("seed " + s.name + " is not t-intersecting");
  detail::CliqueSearch search(g, opts);
  return search.run();
}

struct FamilyCertificate {
  bool valid = false;
  std::size_t size = 0;
  std::optional<int> min_pairwise_intersection;
  std::string hash;  // FNV-1a 64 over the canonical member list, hex
  std::optional<IntersectionWitness<EdgeSet>> violation;
  std::optional<EdgeSet> invalid_member;
};

inline std::string canonical_member_text(const TreeFamily& fam) {
  std::string s;
  for (const auto& m : fam) {
    s += '[';
    bool first = true;
    m.for_each([&](int e) {
      if (!first) s += ',';
      s += std::to_string(e);
      first = false;
    });
    s += ']';
  }
  return s;
}

inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xF];
  return out;
}

// Re-checks that every member is a spanning tree of K_n and that the family is t-intersecting.
inline FamilyCertificate certify_family(int n, const TreeFamily& fam, int t) {
  FamilyCertificate c;
  c.size = fam.size();
  c.hash = fnv1a_hex(canonical_member_text(fam));
  c.min_pairwise_intersection = min_pairwise_intersection(fam);
  for (const auto& m : fam)
    if (!is_spanning_tree(n, m)) {
      c.invalid_member = m;
      return c;
    }
  c.violation = t_intersection_violation(fam, t);
  c.valid = !c.violation.has_value();
  return c;
}

}  // namespace treeint
