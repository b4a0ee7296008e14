#pragma once

// Spreadness of set families, maximal spread restrictions, the greedy spread
// approximation, disjoint cross pairs and a Monte-Carlo check of the spread
// lemma's cover probability.
//
// A family F is r-spread when |F(X)| r^|X| < |F| for every nonempty X. All
// decisions compare integers after clearing denominators.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeint/counting.hpp"
#include "treeint/family.hpp"
#include "treeint/parallel.hpp"

namespace treeint {

// |F[X]| for every X contained in at least one member (X = ∅ included).
template <class Set>
std::unordered_map<Set, std::uint64_t, SetHash<Set>> restriction_counts(const SetFamily<Set>& fam) {
  std::unordered_map<Set, std::uint64_t, SetHash<Set>> counts;
  for (const auto& m : fam) for_each_subset(m, [&](const Set& x) { ++counts[x]; });
  return counts;
}

// Minimum of (|F| / |F(X)|)^(1/|X|) over nonempty X, kept as the exact triple
// (|F|, |F(X)|, |X|). Ties prefer smaller |X|, then the canonically smaller X.
template <class Set>
struct SpreadProfile {
  std::uint64_t family_size = 0;
  std::uint64_t restricted_size = 0;
  int exponent = 0;  // |X|; 0 means no nonempty X meets the family (radius is unbounded)
  Set witness;

  [[nodiscard]] bool unbounded() const { return exponent == 0; }

  // True iff r < radius, i.e. the family is r-spread.
  [[nodiscard]] bool exceeds(const Rational& r) const {
    if (unbounded()) return true;
    const auto e = static_cast<unsigned>(exponent);
    // r^e < |F| / |F(X)|
    return big_pow(boost::multiprecision::numerator(r), e) * restricted_size <
           big_pow(boost::multiprecision::denominator(r), e) * BigCount(family_size);
  }

  // True iff radius equals r exactly.
  [[nodiscard]] bool equals(const Rational& r) const {
    if (unbounded()) return false;
    const auto e = static_cast<unsigned>(exponent);
    return big_pow(boost::multiprecision::numerator(r), e) * restricted_size ==
           big_pow(boost::multiprecision::denominator(r), e) * BigCount(family_size);
  }

  [[nodiscard]] double as_double() const {
    if (unbounded()) return std::numeric_limits<double>::infinity();
    return std::pow(static_cast<double>(family_size) / static_cast<double>(restricted_size), 1.0 / exponent);
  }
};

namespace detail {

// (a/b)^(1/x) < (a/d)^(1/y)  <=>  a^y d^x < a^x b^y
inline int compare_roots(std::uint64_t a, std::uint64_t b, int x, std::uint64_t d, int y) {
  const BigCount lhs = big_pow(BigCount(a), static_cast<unsigned>(y)) * big_pow(BigCount(d), static_cast<unsigned>(x));
  const BigCount rhs = big_pow(BigCount(a), static_cast<unsigned>(x)) * big_pow(BigCount(b), static_cast<unsigned>(y));
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// count * p^|X| >= total * q^|X|
inline bool meets_threshold(std::uint64_t count, std::uint64_t total, int size, const Rational& alpha) {
  const auto e = static_cast<unsigned>(size);
  return BigCount(count) * big_pow(boost::multiprecision::numerator(alpha), e) >=
         BigCount(total) * big_pow(boost::multiprecision::denominator(alpha), e);
}

}  // namespace detail

template <class Set>
SpreadProfile<Set> spread_radius(const SetFamily<Set>& fam) {
  if (fam.empty()) throw std::invalid_argument("spread radius of an empty family");
  const auto counts = restriction_counts(fam);
  SpreadProfile<Set> best;
  best.family_size = fam.size();
  for (const auto& [x, c] : counts) {
    const int size = x.count();
    if (size == 0) continue;
    bool better = best.unbounded();
    if (!better) {
      const int cmp = detail::compare_roots(fam.size(), c, size, best.restricted_size, best.exponent);
      better = cmp < 0 || (cmp == 0 && (size < best.exponent || (size == best.exponent && x < best.witness)));
    }
    if (better) {
      best.restricted_size = c;
      best.exponent = size;
      best.witness = x;
    }
  }
  return best;
}

// Strict: |F(X)| r^|X| < |F| for every nonempty X. Empty families are not spread.
template <class Set>
bool is_r_spread(const SetFamily<Set>& fam, const Rational& r) {
  if (fam.empty()) return false;
  const auto counts = restriction_counts(fam);
  for (const auto& [x, c] : counts) {
    if (x.empty()) continue;
    if (detail::meets_threshold(c, fam.size(), x.count(), r)) return false;
  }
  return true;
}

template <class Set>
struct SpreadRestriction {
  Set x;
  SetFamily<Set> restricted;  // F(X)
};

// An inclusion-maximal X with |F(X)| >= alpha^-|X| |F|. X grows greedily from ∅
// (largest |F(X ∪ {x})|, ties to the smallest x); afterwards the largest
// qualifying strict superset, if any, is taken, so no strict superset of the
// result qualifies.
template <class Set>
SpreadRestriction<Set> find_spread_restriction(const SetFamily<Set>& fam, const Rational& alpha) {
  if (alpha <= 1) throw std::invalid_argument("alpha must exceed 1");
  if (fam.empty()) return {Set{}, fam};
  const auto counts = restriction_counts(fam);
  const std::uint64_t total = fam.size();
  auto count_of = [&](const Set& s) -> std::uint64_t {
    auto it = counts.find(s);
    return it == counts.end() ? 0 : it->second;
  };
  Set x;
  const Set support = fam.support();
  while (true) {
    int best_e = -1;
    std::uint64_t best_c = 0;
    (support - x).for_each([&](int e) {
      Set y = x;
      y.set(e);
      const std::uint64_t c = count_of(y);
      if (c > best_c) {
        best_c = c;
        best_e = e;
      }
    });
    if (best_e < 0 || !detail::meets_threshold(best_c, total, x.count() + 1, alpha)) break;
    x.set(best_e);
  }
  const Set* jump = nullptr;
  std::uint64_t jump_c = 0;
  for (const auto& [y, c] : counts) {
    if (y == x || !x.is_subset_of(y) || !detail::meets_threshold(c, total, y.count(), alpha)) continue;
    const bool better = jump == nullptr || y.count() > jump->count() ||
                        (y.count() == jump->count() && (c > jump_c || (c == jump_c && y < *jump)));
    if (better) {
      jump = &y;
      jump_c = c;
    }
  }
  if (jump != nullptr) x = *jump;
  return {x, restriction(fam, x)};
}

template <class Set>
struct ApproximationStep {
  Set cover;                 // S_i
  SetFamily<Set> attached;   // F^i[S_i]
};

template <class Set>
struct ApproximationResult {
  std::vector<ApproximationStep<Set>> steps;
  SetFamily<Set> remainder;
  std::optional<Set> rejected_cover;  // the S_N that exceeded the cap, if that stopped the run
};

// Repeatedly takes a maximal S_i with |F^i(S_i)| >= r^-|S_i| |F^i|; stops when
// |S_i| > q_cap or F^i is empty, otherwise removes F^i[S_i] and continues.
template <class Set>
ApproximationResult<Set> greedy_spread_approximation(const SetFamily<Set>& fam, const Rational& r, int q_cap) {
  if (r <= 1) throw std::invalid_argument("r must exceed 1");
  ApproximationResult<Set> out;
  SetFamily<Set> current = fam;
  while (!current.empty()) {
    auto found = find_spread_restriction(current, r);
    if (found.x.count() > q_cap) {
      out.rejected_cover = found.x;
      break;
    }
    std::vector<Set> rest;
    std::vector<Set> taken;
    for (const auto& a : current) (found.x.is_subset_of(a) ? taken : rest).push_back(a);
    out.steps.push_back({found.x, current.with_members(std::move(taken))});
    current = current.with_members(std::move(rest));
  }
  out.remainder = current;
  return out;
}

// First (G1, G2) in canonical order with G1 ∩ G2 = ∅.
template <class Set>
std::optional<std::pair<Set, Set>> find_disjoint_pair(const SetFamily<Set>& g1, const SetFamily<Set>& g2) {
  for (const auto& a : g1)
    for (const auto& b : g2)
      if (!a.intersects(b)) return std::pair{a, b};
  return std::nullopt;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sub-seed of one trial, independent of scheduling.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

struct MonteCarloResult {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double p = 0;          // beta * delta
  double radius = 0;     // measured spread radius (inf when unbounded)
  int k = 0;             // uniformity bound used in the theorem
  double estimate = 0;
  double sigma = 0;
  double bound = 0;      // 1 - (2 / log2(radius * delta))^beta * k
  bool holds = false;    // estimate + 3 sigma >= bound
};

// The cover probability lower bound for an r-spread family of uniformity <= k
// hit by a (beta*delta)-random set.
inline double spread_lemma_bound(double r, double beta, double delta, int k) {
  if (std::isinf(r) || k == 0) return 1.0;
  return 1.0 - std::pow(2.0 / std::log2(r * delta), beta) * k;
}

// Samples W ⊆ {0..ground-1} with each element kept independently with
// probability beta*delta and reports how often some member lies inside W.
template <class Set>
MonteCarloResult monte_carlo_cover_probability(const SetFamily<Set>& fam, const Rational& beta, const Rational& delta,
                                               std::uint64_t trials, std::uint64_t seed, int workers = 1) {
  if (beta <= 0 || delta <= 0) throw std::invalid_argument("beta and delta must be positive");
  const Rational p_exact = beta * delta;
  if (p_exact > 1) throw std::invalid_argument("beta * delta must not exceed 1");
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (fam.empty()) throw std::invalid_argument("family must be nonempty");
  const auto profile = spread_radius(fam);
  MonteCarloResult res;
  res.seed = seed;
  res.trials = trials;
  res.p = static_cast<double>(p_exact);
  res.radius = profile.as_double();
  res.k = fam.max_member_size();
  const double d = static_cast<double>(delta);
  if (!std::isinf(res.radius) && !(res.radius * d > 2.0))
    throw std::invalid_argument("spread lemma requires radius * delta > 2");
  res.bound = spread_lemma_bound(res.radius, static_cast<double>(beta), d, res.k);

  const int ground = fam.ground();
  constexpr std::uint64_t kChunk = 1024;
  const std::size_t chunks = static_cast<std::size_t>((trials + kChunk - 1) / kChunk);
  auto hits = parallel_map(workers, chunks, [&](std::size_t c) {
    std::uint64_t h = 0;
    for (std::uint64_t trial = c * kChunk; trial < std::min<std::uint64_t>(trials, (c + 1) * kChunk); ++trial) {
      std::mt19937_64 rng(trial_seed(seed, trial));
      std::bernoulli_distribution keep(res.p);
      Set w;
      for (int e = 0; e < ground; ++e)
        if (keep(rng)) w.set(e);
      for (const auto& m : fam)
        if (m.is_subset_of(w)) {
          ++h;
          break;
        }
    }
    return h;
  });
  for (auto h : hits) res.hits += h;
  res.estimate = static_cast<double>(res.hits) / static_cast<double>(trials);
  res.sigma = std::sqrt(res.estimate * (1.0 - res.estimate) / static_cast<double>(trials));
  res.holds = res.estimate + 3.0 * res.sigma >= res.bound;
  return res;
}

}  // namespace treeint
