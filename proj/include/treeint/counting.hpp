#pragma once

// Exact counting: trees containing a forest, the balanced-product constant
// c(n,t), the ratio inequalities between consecutive c values, and the weight
// f(j) that bounds the top layer of a peeling trace.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "treeint/parallel.hpp"
#include "treeint/tree.hpp"

namespace treeint {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigCount big_pow(const BigCount& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

inline BigCount binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigCount r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Component sizes q_1 <= ... <= q_m of a spanning forest of K_n.
struct ComponentProfile {
  std::vector<int> sizes;

  ComponentProfile() = default;
  explicit ComponentProfile(std::vector<int> s) : sizes(std::move(s)) {
    if (sizes.empty()) throw std::invalid_argument("profile must have at least one component");
    for (int q : sizes)
      if (q < 1) throw std::invalid_argument("component sizes must be positive");
    std::sort(sizes.begin(), sizes.end());
  }

  [[nodiscard]] int n() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }
  [[nodiscard]] int m() const { return static_cast<int>(sizes.size()); }
  [[nodiscard]] int t() const { return n() - m(); }

  friend bool operator==(const ComponentProfile&, const ComponentProfile&) = default;
  friend auto operator<=>(const ComponentProfile& a, const ComponentProfile& b) { return a.sizes <=> b.sizes; }
};

inline ComponentProfile profile_of(const Forest& f) { return ComponentProfile(f.component_sizes()); }

inline std::string to_string(const ComponentProfile& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.sizes.size(); ++i) s += (i ? "," : "") + std::to_string(p.sizes[i]);
  return s + ")";
}

// q_1 ... q_m * n^(n-2-t). The exponent equals m-2; for m = 1 the forest is a
// spanning tree and q_1 = n cancels n^-1.
inline BigCount count_trees_containing(const ComponentProfile& profile) {
  const int n = profile.n();
  const int m = profile.m();
  if (m == 1) return 1;
  BigCount product = 1;
  for (int q : profile.sizes) product *= q;
  return product * big_pow(BigCount(n), static_cast<unsigned>(m - 2));
}

inline void check_nt(int n, int t) {
  if (n < 1) throw std::out_of_range("n must be positive");
  if (t < 0 || t > n - 1)
    throw std::out_of_range("t=" + std::to_string(t) + " outside [0, n-1] for n=" + std::to_string(n));
}

// The n-t parts of sizes floor(n/(n-t)) and ceil(n/(n-t)), ascending.
inline ComponentProfile balanced_profile(int n, int t) {
  check_nt(n, t);
  const int parts = n - t;
  const int lo = n / parts;
  const int extra = n % parts;
  std::vector<int> sizes(static_cast<std::size_t>(parts - extra), lo);
  sizes.insert(sizes.end(), static_cast<std::size_t>(extra), lo + 1);
  return ComponentProfile(std::move(sizes));
}

// Largest product of n-t positive integers summing to n (closed form).
inline BigCount compute_c(int n, int t) {
  check_nt(n, t);
  const int parts = n - t;
  const int lo = n / parts;
  const int extra = n % parts;
  return big_pow(BigCount(lo + 1), static_cast<unsigned>(extra)) *
         big_pow(BigCount(lo), static_cast<unsigned>(parts - extra));
}

// Same maximum by walking every partition of n into exactly n-t parts.
inline std::uint64_t max_partition_product(int n, int t) {
  check_nt(n, t);
  if (n > 60) throw std::out_of_range("exhaustive partition scan supports n <= 60");
  const int parts = n - t;
  std::uint64_t best = 0;
  // Parts are generated in non-decreasing order.
  std::function<void(int, int, int, std::uint64_t)> rec = [&](int remaining, int slots, int min_part,
                                                              std::uint64_t product) {
    if (slots == 0) {
      if (remaining == 0) best = std::max(best, product);
      return;
    }
    for (int p = min_part; p * slots <= remaining; ++p) rec(remaining - p, slots - 1, p, product * p);
  };
  rec(n, parts, 1, 1);
  return best;
}

inline BigCount size_trivial(int n, int t) {
  check_nt(n, t);
  if (t == n - 1) return 1;
  return compute_c(n, t) * big_pow(BigCount(n), static_cast<unsigned>(n - 2 - t));
}

namespace detail {

// sum_{k<=terms} 1/k!  <  e  <  that sum + 1/(terms! * terms)
inline std::pair<Rational, Rational> e_bracket(int terms) {
  Rational sum = 0;
  BigCount fact = 1;
  for (int k = 0; k <= terms; ++k) {
    if (k > 0) fact *= k;
    sum += Rational(1, fact);
  }
  return {sum, sum + Rational(1, fact * terms)};
}

}  // namespace detail

// A continued-fraction convergent P/Q of e with e < P/Q < e + 1e-9, certified
// against an exact factorial-series bracket.
inline Rational e_upper_bound() {
  static const Rational cached = [] {
    const auto [lo, hi] = detail::e_bracket(40);
    const Rational tolerance(1, BigCount(1000000000));
    // e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]
    BigCount h_prev = 1, h = 2, k_prev = 0, k = 1;
    for (int i = 1; i < 60; ++i) {
      const int a = (i % 3 == 2) ? 2 * (i / 3 + 1) : 1;
      BigCount h_next = a * h + h_prev;
      BigCount k_next = a * k + k_prev;
      h_prev = h;
      h = h_next;
      k_prev = k;
      k = k_next;
      const Rational conv(h, k);
      if (conv > hi && conv - lo < tolerance) return conv;
    }
    throw std::logic_error("no certified convergent of e found");
  }();
  return cached;
}

struct RatioCheck {
  std::string check;
  int n = 0;
  int t = 0;
  int r = 0;
  BigCount lhs;
  BigCount rhs;
  bool holds = false;
};

enum class RatioBound {
  kAtMostTwo,        // c(n,t+r) <= 2^r c(n,t)
  kAtMostEOverThree, // t >= 2n/3:       c(n,t+r) <= (e/3)^r c(n,t)
  kAtMostNineEighths,// n/2 <= t < 2n/3: c(n,t+r) <= (9/8)^r c(n,t)
  kAtLeastOneOverN,  // c(n,t+r) >= n^-r c(n,t)
};

inline std::string ratio_bound_name(RatioBound b) {
  switch (b) {
    case RatioBound::kAtMostTwo: return "c-ratio<=2^r";
    case RatioBound::kAtMostEOverThree: return "c-ratio<=(e/3)^r";
    case RatioBound::kAtMostNineEighths: return "c-ratio<=(9/8)^r";
    case RatioBound::kAtLeastOneOverN: return "c-ratio>=n^-r";
  }
  return "?";
}

inline bool ratio_bound_applies(RatioBound b, int n, int t) {
  switch (b) {
    case RatioBound::kAtMostEOverThree: return 3 * t >= 2 * n;
    case RatioBound::kAtMostNineEighths: return 2 * t >= n && 3 * t < 2 * n;
    default: return true;
  }
}

// lhs <= rhs for the upper bounds, lhs >= rhs for the lower bound, all integers.
inline RatioCheck check_c_ratio(RatioBound bound, int n, int t, int r, const BigCount& c_t, const BigCount& c_tr) {
  RatioCheck rc{ratio_bound_name(bound), n, t, r, 0, 0, false};
  const auto ur = static_cast<unsigned>(r);
  switch (bound) {
    case RatioBound::kAtMostTwo:
      rc.lhs = c_tr;
      rc.rhs = big_pow(2, ur) * c_t;
      rc.holds = rc.lhs <= rc.rhs;
      break;
    case RatioBound::kAtMostEOverThree: {
      const Rational e = e_upper_bound();
      rc.lhs = c_tr * big_pow(3 * boost::multiprecision::denominator(e), ur);
      rc.rhs = c_t * big_pow(boost::multiprecision::numerator(e), ur);
      rc.holds = rc.lhs <= rc.rhs;
      break;
    }
    case RatioBound::kAtMostNineEighths:
      rc.lhs = big_pow(8, ur) * c_tr;
      rc.rhs = big_pow(9, ur) * c_t;
      rc.holds = rc.lhs <= rc.rhs;
      break;
    case RatioBound::kAtLeastOneOverN:
      rc.lhs = big_pow(n, ur) * c_tr;
      rc.rhs = c_t;
      rc.holds = rc.lhs >= rc.rhs;
      break;
  }
  return rc;
}

inline RatioCheck check_c_ratio(RatioBound bound, int n, int t, int r) {
  return check_c_ratio(bound, n, t, r, compute_c(n, t), compute_c(n, t + r));
}

struct RatioScanReport {
  int n_max = 0;
  std::uint64_t checks = 0;
  std::vector<RatioCheck> violations;  // sorted by (n, t, r, check)
};

// Every n in [2, n_max], r >= 1 and t with t + r <= n - 2, plus the r = 1,
// t = n - 2 step.
inline RatioScanReport verify_c_ratio_bounds(int n_max, int workers = 1) {
  if (n_max < 3) throw std::out_of_range("n_max must be at least 3");
  const Rational e = e_upper_bound();
  const BigCount e_num = boost::multiprecision::numerator(e);
  const BigCount e_den3 = 3 * boost::multiprecision::denominator(e);
  struct Partial {
    std::uint64_t checks = 0;
    std::vector<RatioCheck> violations;
  };
  auto parts = parallel_map(workers, static_cast<std::size_t>(n_max - 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx) + 2;
    Partial p;
    std::vector<BigCount> c(n);
    for (int t = 0; t <= n - 1; ++t) c[t] = compute_c(n, t);
    std::vector<BigCount> pow2{1}, pow8{1}, pow9{1}, pown{1}, pow_e_num{1}, pow_e_den3{1};
    for (int r = 1; r <= n; ++r) {
      pow2.push_back(pow2.back() * 2);
      pow8.push_back(pow8.back() * 8);
      pow9.push_back(pow9.back() * 9);
      pown.push_back(pown.back() * n);
      pow_e_num.push_back(pow_e_num.back() * e_num);
      pow_e_den3.push_back(pow_e_den3.back() * e_den3);
    }
    auto record = [&](RatioBound b, int t, int r, BigCount lhs, BigCount rhs, bool holds) {
      ++p.checks;
      if (!holds) p.violations.push_back(RatioCheck{ratio_bound_name(b), n, t, r, std::move(lhs), std::move(rhs), false});
    };
    for (int t = 0; t <= n - 2; ++t) {
      const int r_max = (t == n - 2) ? 1 : n - 2 - t;
      for (int r = 1; r <= r_max; ++r) {
        const BigCount& ct = c[t];
        const BigCount& ctr = c[t + r];
        {
          BigCount rhs = pow2[r] * ct;
          const bool ok = ctr <= rhs;
          record(RatioBound::kAtMostTwo, t, r, ctr, std::move(rhs), ok);
        }
        if (ratio_bound_applies(RatioBound::kAtMostEOverThree, n, t)) {
          BigCount lhs = ctr * pow_e_den3[r];
          BigCount rhs = ct * pow_e_num[r];
          const bool ok = lhs <= rhs;
          record(RatioBound::kAtMostEOverThree, t, r, std::move(lhs), std::move(rhs), ok);
        }
        if (ratio_bound_applies(RatioBound::kAtMostNineEighths, n, t)) {
          BigCount lhs = pow8[r] * ctr;
          BigCount rhs = pow9[r] * ct;
          const bool ok = lhs <= rhs;
          record(RatioBound::kAtMostNineEighths, t, r, std::move(lhs), std::move(rhs), ok);
        }
        {
          BigCount lhs = pown[r] * ctr;
          const bool ok = lhs >= ct;
          record(RatioBound::kAtLeastOneOverN, t, r, std::move(lhs), ct, ok);
        }
      }
    }
    return p;
  });
  RatioScanReport report;
  report.n_max = n_max;
  for (auto& p : parts) {
    report.checks += p.checks;
    for (auto& v : p.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

// f(j) = C(t, t-j) * C(k, j)^2 * (k+1)^(k-j)
inline BigCount f_weight(int t, int k, int j) {
  if (!(0 <= j && j <= k && k <= t)) throw std::out_of_range("f_weight requires 0 <= j <= k <= t");
  const BigCount ckj = binomial(k, j);
  return binomial(t, t - j) * ckj * ckj * big_pow(BigCount(k + 1), static_cast<unsigned>(k - j));
}

// f(0), ..., f(k) via f(j+1) = f(j) (t-j)(k-j)^2 / ((j+1)^3 (k+1)); every division is exact.
inline std::vector<BigCount> f_weights(int t, int k) {
  if (!(0 <= k && k <= t)) throw std::out_of_range("f_weights requires 0 <= k <= t");
  std::vector<BigCount> f;
  f.reserve(static_cast<std::size_t>(k) + 1);
  f.push_back(big_pow(BigCount(k + 1), static_cast<unsigned>(k)));
  for (int j = 0; j < k; ++j) {
    BigCount next = f.back() * BigCount(t - j) * BigCount(k - j) * BigCount(k - j);
    next /= BigCount(j + 1) * BigCount(j + 1) * BigCount(j + 1) * BigCount(k + 1);
    f.push_back(std::move(next));
  }
  return f;
}

// Exact argmax of f over j in {0..k}; ties go to the larger j.
inline int argmax_f(int t, int k) {
  if (!(1 <= k && k <= t)) throw std::out_of_range("argmax_f requires 1 <= k <= t");
  const auto f = f_weights(t, k);
  int best = 0;
  for (int j = 1; j <= k; ++j)
    if (f[j] >= f[best]) best = j;
  return best;
}

struct PeelBoundRow {
  int k = 0;
  int j0 = 0;
  BigCount f_j0;
  Rational bound;  // B(k) = (k+1) f(j0) 2^k / n^k
  BigCount lhs;    // (k+1) f(j0) 4^k
  BigCount rhs;    // n^k
  bool holds = false;  // B(k) <= 2^-k
};

inline PeelBoundRow peel_bound_at(int n, int t, int k) {
  if (!(1 <= k && k <= t)) throw std::out_of_range("peel bound requires 1 <= k <= t");
  if (n < 2) throw std::out_of_range("n must be at least 2");
  const auto f = f_weights(t, k);
  int j0 = 0;
  for (int j = 1; j <= k; ++j)
    if (f[j] >= f[j0]) j0 = j;
  PeelBoundRow row;
  row.k = k;
  row.j0 = j0;
  row.f_j0 = f[j0];
  const BigCount two_k = big_pow(2, static_cast<unsigned>(k));
  row.rhs = big_pow(BigCount(n), static_cast<unsigned>(k));
  row.bound = Rational(BigCount(k + 1) * f[j0] * two_k, row.rhs);
  row.lhs = BigCount(k + 1) * f[j0] * two_k * two_k;
  row.holds = row.lhs <= row.rhs;
  return row;
}

inline std::vector<PeelBoundRow> peel_bound_scan(int n, int t, int k_lo, int k_hi, int k_step = 1, int workers = 1) {
  if (k_step < 1) throw std::out_of_range("k_step must be positive");
  if (k_lo < 1 || k_hi > t || k_lo > k_hi) throw std::out_of_range("peel bound scan requires 1 <= k_lo <= k_hi <= t");
  std::vector<int> ks;
  for (int k = k_lo; k <= k_hi; k += k_step) ks.push_back(k);
  return parallel_map(workers, ks.size(), [&](std::size_t i) { return peel_bound_at(n, t, ks[i]); });
}

// Largest k >= 1 with k^100 < t, i.e. k < t^0.01 (0 if none).
inline int small_k_limit(int t) {
  int k = 0;
  while (big_pow(BigCount(k + 1), 100) < t) ++k;
  return k;
}

}  // namespace treeint
