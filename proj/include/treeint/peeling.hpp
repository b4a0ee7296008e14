#pragma once

// Maximal t-intersecting antichains and the level-by-level peeling procedure.
//
// A t-intersecting family H is maximal when it is an antichain and for every
// H in H and every proper subset X of H some member H' has |X ∩ H'| < t.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeint/family.hpp"
#include "treeint/spread.hpp"

namespace treeint {

// Shrinks members (canonical order; each member repeatedly drops the largest
// element whose removal keeps the whole family t-intersecting), then removes
// duplicates and members that strictly contain another member.
template <class Set>
SetFamily<Set> maximal_reduce(const SetFamily<Set>& fam, int t) {
  if (auto v = t_intersection_violation(fam, t))
    throw std::invalid_argument("input family is not " + std::to_string(t) + "-intersecting");
  std::vector<Set> cur = fam.members();
  for (std::size_t i = 0; i < cur.size(); ++i) {
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      auto elems = cur[i].elements();
      for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
        Set cand = cur[i];
        cand.reset(*it);
        if (cand.count() < t) continue;
        bool ok = true;
        for (std::size_t j = 0; j < cur.size() && ok; ++j)
          if (j != i && cand.intersection_count(cur[j]) < t) ok = false;
        if (ok) {
          cur[i] = cand;
          shrunk = true;
          break;
        }
      }
    }
  }
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  std::vector<Set> kept;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < cur.size() && !dominated; ++j)
      if (j != i && cur[j].is_subset_of(cur[i])) dominated = true;
    if (!dominated) kept.push_back(cur[i]);
  }
  return fam.with_members(std::move(kept));
}

template <class Set>
struct CertificateEntry {
  std::size_t member = 0;   // index of H
  Set subset;               // X ⊊ H
  std::size_t witness = 0;  // index of H' with |X ∩ H'| < t
};

template <class Set>
struct MaximalityCertificate {
  std::vector<CertificateEntry<Set>> entries;
};

template <class Set>
struct MaximalityCheck {
  bool t_intersecting = false;
  bool antichain = false;
  std::optional<MaximalityCertificate<Set>> certificate;
  std::optional<std::pair<std::size_t, Set>> uncovered;  // (member, subset) with no witness

  [[nodiscard]] bool maximal() const { return t_intersecting && antichain && certificate.has_value(); }
};

// Members of size <= exhaustive_limit get a witness for every proper subset.
// Larger members get witnesses for their one-element deletions, which covers
// every proper subset because |X ∩ H'| is monotone in X.
template <class Set>
MaximalityCheck<Set> check_maximal(const SetFamily<Set>& fam, int t, int exhaustive_limit = 12) {
  MaximalityCheck<Set> out;
  out.t_intersecting = is_t_intersecting(fam, t);
  out.antichain = is_antichain(fam);
  MaximalityCertificate<Set> cert;
  const auto& m = fam.members();
  auto witness_for = [&](const Set& x) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < m.size(); ++j)
      if (x.intersection_count(m[j]) < t) return j;
    return std::nullopt;
  };
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<Set> subsets;
    if (m[i].count() <= exhaustive_limit) {
      for_each_subset(m[i], [&](const Set& x) {
        if (x != m[i]) subsets.push_back(x);
      });
    } else {
      m[i].for_each([&](int e) {
        Set x = m[i];
        x.reset(e);
        subsets.push_back(x);
      });
    }
    for (const auto& x : subsets) {
      auto w = witness_for(x);
      if (!w) {
        out.uncovered = std::pair{i, x};
        return out;
      }
      cert.entries.push_back({i, x, *w});
    }
  }
  out.certificate = std::move(cert);
  return out;
}

template <class Set>
struct PeelLevel {
  int k = 0;
  SetFamily<Set> h;  // H_k
  SetFamily<Set> w;  // W_k: members of H_k of size t+k
};

template <class Set>
struct PeelingTrace {
  int t = 0;
  int q = 0;
  std::vector<PeelLevel<Set>> levels;  // k = q-t, q-t-1, ..., 0
};

// H_{q-t} = fam; W_k = members of H_k of size t+k; H_{k-1} = maximal_reduce(H_k \ W_k).
template <class Set>
PeelingTrace<Set> peel(const SetFamily<Set>& fam, int t, int q) {
  if (t < 0 || q < t) throw std::invalid_argument("peel requires 0 <= t <= q");
  for (const auto& m : fam)
    if (m.count() > q) throw std::invalid_argument("member larger than q");
  if (!is_t_intersecting(fam, t)) throw std::invalid_argument("input family is not t-intersecting");
  PeelingTrace<Set> trace{t, q, {}};
  SetFamily<Set> h = fam;
  for (int k = q - t; k >= 0; --k) {
    std::vector<Set> top, rest;
    for (const auto& m : h) (m.count() == t + k ? top : rest).push_back(m);
    trace.levels.push_back({k, h, h.with_members(top)});
    if (k > 0) h = maximal_reduce(h.with_members(std::move(rest)), t);
  }
  return trace;
}

template <class Set>
struct SpreadViolation {
  Set x;
  std::string reason;
};

// For every X of size <= t+k-1 inside a member of W: W(X) must not be
// alpha-spread, and |W(X)| <= (k+1)^(t+k-|X|). With alpha = k+1 the first test
// covers every alpha > k+1 at once.
template <class Set>
std::optional<SpreadViolation<Set>> verify_no_spread_restriction(const SetFamily<Set>& w, int t, int k,
                                                                 const Rational& alpha) {
  if (alpha < k + 1) throw std::invalid_argument("alpha must be at least k+1");
  if (w.empty()) return std::nullopt;
  const auto counts = restriction_counts(w);
  // W(X) is not alpha-spread iff some Z ⊋ X has |W[Z]| alpha^(|Z|-|X|) >= |W[X]|.
  std::unordered_map<Set, bool, SetHash<Set>> blocked;
  for (const auto& [z, cz] : counts) {
    const int zs = z.count();
    for_each_subset(z, [&](const Set& x) {
      if (x == z) return;
      auto& b = blocked[x];
      if (b) return;
      if (detail::meets_threshold(cz, counts.at(x), zs - x.count(), alpha)) b = true;
    });
  }
  std::vector<Set> order;
  for (const auto& [x, c] : counts)
    if (x.count() <= t + k - 1) order.push_back(x);
  std::sort(order.begin(), order.end());
  for (const auto& x : order) {
    if (!blocked[x]) return SpreadViolation<Set>{x, "restriction is alpha-spread"};
    const BigCount cap = big_pow(BigCount(k + 1), static_cast<unsigned>(t + k - x.count()));
    if (BigCount(counts.at(x)) > cap) return SpreadViolation<Set>{x, "restriction exceeds (k+1)^(t+k-|X|)"};
  }
  return std::nullopt;
}

template <class Set>
struct LevelReport {
  int k = 0;
  std::size_t h_size = 0;
  std::size_t w_size = 0;
  bool t_intersecting = false;
  bool antichain = false;
  bool maximal = false;
  bool size_bound = false;               // (i)
  std::optional<bool> coverage;          // (ii), for k < q-t with a reference family
  std::optional<bool> no_spread;         // (iii), for maximal levels
};

template <class Set>
struct TraceReport {
  std::vector<LevelReport<Set>> levels;
  bool ok = true;
};

// A[H] for a reference family A.
template <class Set>
std::vector<Set> covered_by(std::span<const Set> reference, const SetFamily<Set>& h) {
  std::vector<Set> out;
  for (const auto& a : reference)
    for (const auto& s : h)
      if (s.is_subset_of(a)) {
        out.push_back(a);
        break;
      }
  return out;
}

// Checks every level. The reduced levels (k < q-t) must be maximal; the top
// level is the input itself and gets the maximality-dependent check (iii) only
// when it happens to be maximal.
template <class Set>
TraceReport<Set> verify_trace(const PeelingTrace<Set>& trace, std::span<const Set> reference) {
  TraceReport<Set> rep;
  const int t = trace.t;
  for (std::size_t li = 0; li < trace.levels.size(); ++li) {
    const auto& lvl = trace.levels[li];
    LevelReport<Set> lr;
    lr.k = lvl.k;
    lr.h_size = lvl.h.size();
    lr.w_size = lvl.w.size();
    const auto mc = check_maximal(lvl.h, t);
    lr.t_intersecting = mc.t_intersecting;
    lr.antichain = mc.antichain;
    lr.maximal = mc.maximal();
    lr.size_bound = lvl.h.max_member_size() <= t + lvl.k;
    if (li > 0) {
      const auto& upper = trace.levels[li - 1];
      const auto a_upper = covered_by(reference, upper.h);
      auto a_h = covered_by(reference, lvl.h);
      auto a_w = covered_by(reference, upper.w);
      std::sort(a_h.begin(), a_h.end());
      std::sort(a_w.begin(), a_w.end());
      bool ok = true;
      for (const auto& a : a_upper)
        if (!std::binary_search(a_h.begin(), a_h.end(), a) && !std::binary_search(a_w.begin(), a_w.end(), a)) ok = false;
      lr.coverage = ok;
    }
    if (lr.maximal) lr.no_spread = !verify_no_spread_restriction(lvl.w, t, lvl.k, Rational(lvl.k + 1)).has_value();
    const bool top = li == 0;
    const bool level_ok = lr.t_intersecting && lr.size_bound && lr.coverage.value_or(true) &&
                          lr.no_spread.value_or(true) && (top || (lr.antichain && lr.maximal));
    rep.ok = rep.ok && level_ok;
    rep.levels.push_back(lr);
  }
  return rep;
}

}  // namespace treeint
