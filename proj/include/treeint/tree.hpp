#pragma once

// Edges of K_n, forests, labelled spanning trees and the Prüfer bijection.
//
// Vertices are labelled 1..n. An edge {u,v} with u < v is identified with its
// zero-based rank in the lexicographic order of all pairs, so every edge set of
// K_n is a bitset over {0, ..., C(n,2)-1}.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treeint/bitset.hpp"
#include "treeint/parallel.hpp"

namespace treeint {

inline constexpr int kMaxVertices = 11;      // C(11,2) = 55 edges fit one word
inline constexpr int kDefaultEnumerationCap = 8;

class CycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int pair_count(int n) { return n * (n - 1) / 2; }

inline void check_vertex_count(int n, int lo = 1) {
  if (n < lo || n > kMaxVertices)
    throw std::out_of_range("vertex count " + std::to_string(n) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(kMaxVertices) + "]");
}

struct Edge {
  int u = 0;
  int v = 0;
  int index = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

inline int edge_index(int u, int v, int n) {
  check_vertex_count(n, 2);
  if (u < 1 || v > n || u >= v)
    throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ") invalid for n=" + std::to_string(n));
  return (u - 1) * (2 * n - u) / 2 + (v - u - 1);
}

inline Edge edge_from_index(int index, int n) {
  check_vertex_count(n, 2);
  if (index < 0 || index >= pair_count(n))
    throw std::out_of_range("edge index " + std::to_string(index) + " invalid for n=" + std::to_string(n));
  int u = 1;
  int rest = index;
  while (rest >= n - u) {
    rest -= n - u;
    ++u;
  }
  return Edge{u, u + 1 + rest, index};
}

inline Edge make_edge(int u, int v, int n) {
  if (u > v) std::swap(u, v);
  return Edge{u, v, edge_index(u, v, n)};
}

// Endpoint lookup tables for one n; cheap to build, used on hot paths.
class EdgeTable {
 public:
  explicit EdgeTable(int n) : n_(n), index_(static_cast<std::size_t>((n + 1) * (n + 1)), -1) {
    check_vertex_count(n, 1);
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) {
        const int idx = static_cast<int>(edges_.size());
        edges_.push_back(Edge{u, v, idx});
        index_[u * (n + 1) + v] = idx;
        index_[v * (n + 1) + u] = idx;
      }
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int size() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const Edge& edge(int index) const { return edges_.at(index); }
  [[nodiscard]] int index(int u, int v) const { return index_[u * (n_ + 1) + v]; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<int> index_;
};

inline EdgeSet edge_set(int n, const std::vector<std::pair<int, int>>& pairs) {
  EdgeSet s;
  for (auto [u, v] : pairs) s.set(make_edge(u, v, n).index);
  return s;
}

inline void check_edge_set(int n, const EdgeSet& edges) {
  check_vertex_count(n);
  const int h = edges.highest();
  if (h >= pair_count(n))
    throw std::out_of_range("edge index " + std::to_string(h) + " invalid for n=" + std::to_string(n));
}

class DisjointSets {
 public:
  explicit DisjointSets(int size) : parent_(size), size_(size, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // False when a and b were already joined.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  int component_size(int x) { return size_[find(x)]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

// An acyclic edge set together with its connected-component partition.
class Forest {
 public:
  Forest() = default;

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const EdgeSet& edges() const { return edges_; }
  [[nodiscard]] int size() const { return edges_.count(); }
  [[nodiscard]] int component_count() const { return static_cast<int>(blocks_.size()); }
  // Blocks of vertices (1-based), each sorted, blocks ordered by smallest vertex.
  [[nodiscard]] const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  // Sizes q_1 <= ... <= q_m.
  [[nodiscard]] std::vector<int> component_sizes() const {
    std::vector<int> sizes;
    for (const auto& b : blocks_) sizes.push_back(static_cast<int>(b.size()));
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  }

  friend Forest components_of(int n, const EdgeSet& edges);

 private:
  int n_ = 0;
  EdgeSet edges_;
  std::vector<std::vector<int>> blocks_;
};

inline bool is_acyclic(int n, const EdgeSet& edges) {
  DisjointSets dsu(n + 1);
  const EdgeTable table(n);
  bool ok = true;
  edges.for_each([&](int i) {
    const Edge& e = table.edge(i);
    if (ok && !dsu.unite(e.u, e.v)) ok = false;
  });
  return ok;
}

// Throws CycleError when `edges` contains a cycle.
inline Forest components_of(int n, const EdgeSet& edges) {
  check_edge_set(n, edges);
  DisjointSets dsu(n + 1);
  const EdgeTable table(n);
  edges.for_each([&](int i) {
    const Edge& e = table.edge(i);
    if (!dsu.unite(e.u, e.v))
      throw CycleError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") closes a cycle");
  });
  Forest f;
  f.n_ = n;
  f.edges_ = edges;
  std::vector<int> block_of_root(n + 1, -1);
  for (int v = 1; v <= n; ++v) {
    const int r = dsu.find(v);
    if (block_of_root[r] < 0) {
      block_of_root[r] = static_cast<int>(f.blocks_.size());
      f.blocks_.emplace_back();
    }
    f.blocks_[block_of_root[r]].push_back(v);
  }
  return f;
}

class LabeledTree {
 public:
  LabeledTree() = default;

  // Validates that `edges` is a spanning tree of K_n.
  LabeledTree(int n, const EdgeSet& edges) : n_(n), edges_(edges) {
    check_edge_set(n, edges);
    if (edges.count() != n - 1 || !is_acyclic(n, edges))
      throw std::invalid_argument("edge set is not a spanning tree of K_" + std::to_string(n));
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const EdgeSet& edges() const { return edges_; }

  [[nodiscard]] std::vector<int> degrees() const {
    std::vector<int> deg(n_ + 1, 0);
    const EdgeTable table(n_);
    edges_.for_each([&](int i) {
      ++deg[table.edge(i).u];
      ++deg[table.edge(i).v];
    });
    return deg;
  }

  // Centre of a full star, or 0 when the tree is not a star.
  [[nodiscard]] int star_center() const {
    const auto deg = degrees();
    for (int v = 1; v <= n_; ++v)
      if (deg[v] == n_ - 1) return v;
    return 0;
  }

  friend bool operator==(const LabeledTree&, const LabeledTree&) = default;

 private:
  int n_ = 0;
  EdgeSet edges_;
};

inline bool is_spanning_tree(int n, const EdgeSet& edges) {
  return edges.highest() < pair_count(n) && edges.count() == n - 1 && is_acyclic(n, edges);
}

inline EdgeSet star_edges(int n, int center) {
  EdgeSet s;
  for (int v = 1; v <= n; ++v)
    if (v != center) s.set(make_edge(center, v, n).index);
  return s;
}

struct PruferSequence {
  int n = 0;
  std::vector<int> symbols;  // length n-2, values in 1..n

  friend bool operator==(const PruferSequence&, const PruferSequence&) = default;
};

namespace detail {

// Decodes without validation; `degree` is scratch space of size n+1.
inline EdgeSet prufer_decode_raw(int n, const int* symbols, const EdgeTable& table, std::vector<int>& degree) {
  std::fill(degree.begin(), degree.end(), 1);
  for (int i = 0; i < n - 2; ++i) ++degree[symbols[i]];
  EdgeSet edges;
  for (int i = 0; i < n - 2; ++i) {
    int leaf = 1;
    while (degree[leaf] != 1) ++leaf;
    edges.set(table.index(leaf, symbols[i]));
    degree[leaf] = 0;
    --degree[symbols[i]];
  }
  int a = 0;
  for (int v = 1; v <= n; ++v)
    if (degree[v] == 1) {
      if (a == 0) {
        a = v;
      } else {
        edges.set(table.index(a, v));
        break;
      }
    }
  return edges;
}

}  // namespace detail

inline LabeledTree prufer_decode(const PruferSequence& seq) {
  const int n = seq.n;
  check_vertex_count(n, 2);
  if (static_cast<int>(seq.symbols.size()) != n - 2)
    throw std::invalid_argument("Prüfer sequence for n=" + std::to_string(n) + " must have length " +
                                std::to_string(n - 2));
  for (int s : seq.symbols)
    if (s < 1 || s > n) throw std::invalid_argument("Prüfer symbol " + std::to_string(s) + " outside [1, n]");
  const EdgeTable table(n);
  std::vector<int> degree(n + 1);
  return LabeledTree(n, detail::prufer_decode_raw(n, seq.symbols.data(), table, degree));
}

inline PruferSequence prufer_encode(const LabeledTree& tree) {
  const int n = tree.n();
  check_vertex_count(n, 2);
  if (!is_spanning_tree(n, tree.edges())) throw std::invalid_argument("not a spanning tree");
  const EdgeTable table(n);
  std::vector<std::vector<int>> adj(n + 1);
  tree.edges().for_each([&](int i) {
    adj[table.edge(i).u].push_back(table.edge(i).v);
    adj[table.edge(i).v].push_back(table.edge(i).u);
  });
  std::vector<int> degree(n + 1);
  std::vector<bool> removed(n + 1, false);
  for (int v = 1; v <= n; ++v) degree[v] = static_cast<int>(adj[v].size());
  PruferSequence seq{n, {}};
  for (int step = 0; step < n - 2; ++step) {
    int leaf = 1;
    while (removed[leaf] || degree[leaf] != 1) ++leaf;
    for (int w : adj[leaf])
      if (!removed[w]) {
        seq.symbols.push_back(w);
        --degree[w];
        break;
      }
    removed[leaf] = true;
  }
  return seq;
}

inline std::uint64_t cayley_count(int n) {
  std::uint64_t c = 1;
  for (int i = 0; i < n - 2; ++i) c *= static_cast<std::uint64_t>(n);
  return c;
}

// Calls fn(symbols, edges) for every tree of K_n whose Prüfer sequence has
// first symbol in [first_lo, first_hi], in Prüfer-lexicographic order.
template <class Fn>
void enumerate_prufer_range(int n, int first_lo, int first_hi, Fn&& fn) {
  const EdgeTable table(n);
  std::vector<int> degree(n + 1);
  if (n == 2) {
    std::vector<int> none;
    fn(none, detail::prufer_decode_raw(n, nullptr, table, degree));
    return;
  }
  std::vector<int> seq(n - 2, 1);
  seq[0] = first_lo;
  while (true) {
    fn(static_cast<const std::vector<int>&>(seq), detail::prufer_decode_raw(n, seq.data(), table, degree));
    int pos = n - 3;
    while (pos >= 0 && seq[pos] == n) {
      seq[pos] = 1;
      --pos;
    }
    if (pos < 0) return;
    ++seq[pos];
    if (pos == 0 && seq[0] > first_hi) return;
  }
}

// Streams every labelled spanning tree of K_n exactly once, in Prüfer-lexicographic order.
template <class Fn>
void enumerate_spanning_trees(int n, Fn&& fn, int cap = kDefaultEnumerationCap) {
  check_vertex_count(n, 2);
  if (n > cap) throw std::out_of_range("n=" + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));
  enumerate_prufer_range(n, 1, n, [&](const std::vector<int>&, const EdgeSet& e) { fn(e); });
}

// All trees of K_n as edge sets, in Prüfer-lexicographic order. The result is
// identical for every worker count.
inline std::vector<EdgeSet> all_spanning_trees(int n, int workers = 1, int cap = kDefaultEnumerationCap) {
  check_vertex_count(n, 2);
  if (n > cap) throw std::out_of_range("n=" + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));
  if (n == 2) return {edge_set(2, {{1, 2}})};
  auto parts = parallel_map(workers, static_cast<std::size_t>(n), [n](std::size_t first) {
    std::vector<EdgeSet> out;
    const int s = static_cast<int>(first) + 1;
    enumerate_prufer_range(n, s, s, [&](const std::vector<int>&, const EdgeSet& e) { out.push_back(e); });
    return out;
  });
  std::vector<EdgeSet> all;
  all.reserve(cayley_count(n));
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

// Text format: "n <N>" then one "u v" per line; '#' starts a comment line.
struct EdgeList {
  int n = 0;
  EdgeSet edges;
};

inline EdgeList parse_edge_list(std::string_view text, bool require_acyclic = true) {
  std::istringstream in{std::string(text)};
  std::string line;
  EdgeList out;
  bool have_n = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + why);
    };
    if (!have_n) {
      std::string key;
      if (!(ls >> key >> out.n) || key != "n") fail("expected header 'n <N>'");
      check_vertex_count(out.n);
      have_n = true;
      continue;
    }
    int u = 0, v = 0;
    if (!(ls >> u >> v)) fail("expected 'u v'");
    std::string extra;
    if (ls >> extra) fail("trailing content");
    if (!(1 <= u && u < v && v <= out.n)) fail("edge must satisfy 1 <= u < v <= n");
    const int idx = edge_index(u, v, out.n);
    if (out.edges.test(idx)) fail("duplicate edge");
    out.edges.set(idx);
  }
  if (!have_n) throw std::invalid_argument("missing header 'n <N>'");
  if (require_acyclic && !is_acyclic(out.n, out.edges)) throw CycleError("edge list contains a cycle");
  return out;
}

inline std::string format_edge_list(int n, const EdgeSet& edges) {
  std::ostringstream out;
  out << "n " << n << "\n";
  const EdgeTable table(n);
  edges.for_each([&](int i) { out << table.edge(i).u << " " << table.edge(i).v << "\n"; });
  return out.str();
}

}  // namespace treeint
