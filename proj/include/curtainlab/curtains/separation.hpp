#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curtainlab/curtains/curtain.hpp"

namespace curtainlab::curtains {

/// Search parameters of the L-separation falsifier. A NaN window radius means
/// "distance between the poles plus 10".
struct Budget {
  double window_radius = std::numeric_limits<double>::quiet_NaN();
  int candidates = 200;
  int samples = 32;
  std::uint64_t seed = 0;
  std::uint64_t key = 0;
};

enum class Verdict { certified_up_to_budget, falsified };

inline std::string to_string(Verdict v) {
  return v == Verdict::falsified ? "falsified-with-witness" : "certified-separated-up-to-budget";
}

template <class S>
struct SeparationReport {
  int L = 1;
  Verdict verdict = Verdict::certified_up_to_budget;
  /// L+1 curtains dual to one geodesic, each meeting both inputs.
  std::optional<Chain<S>> witness;
  /// Points of h1 and of h2 lying on each witness curtain.
  std::vector<typename S::Point> meets_first, meets_second;
  Budget budget;
  double radius_used = 0.0;
  int candidates_tried = 0;
  int samples_used = 0;
};

inline constexpr double kChainGap = 1e-6;

namespace detail {

using Interval = std::pair<double, double>;

// Parameters s with |u - s| <= 1/2 - margin for some u.
inline std::vector<Interval> merged_windows(std::vector<double> us) {
  constexpr double r = 0.5 - kPoleMargin;
  std::sort(us.begin(), us.end());
  std::vector<Interval> out;
  for (double u : us) {
    if (!out.empty() && u - r <= out.back().second)
      out.back().second = std::max(out.back().second, u + r);
    else
      out.emplace_back(u - r, u + r);
  }
  return out;
}

inline std::vector<Interval> intersect(const std::vector<Interval>& a,
                                       const std::vector<Interval>& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].first, b[j].first), hi = std::min(a[i].second, b[j].second);
    if (lo <= hi) out.emplace_back(lo, hi);
    (a[i].second < b[j].second) ? ++i : ++j;
  }
  return out;
}

template <class S>
bool curtains_disjoint(const S& s, const Curtain<S>& h1, const Curtain<S>& h2,
                       const std::vector<typename S::Point>& s1,
                       const std::vector<typename S::Point>& s2) {
  if (same_dual(s, h1, h2)) return std::abs(h1.t - h2.t) > 1.0;
  const auto r2 = reversed(s, h2);
  if (same_dual(s, h1, r2)) return std::abs(h1.t - r2.t) > 1.0;
  for (const auto& p : s1)
    if (side_of(s, h2, p) == Side::pole) return false;
  for (const auto& p : s2)
    if (side_of(s, h1, p) == Side::pole) return false;
  return true;
}

}  // namespace detail

/// Sound falsifier for "h1 and h2 are L-separated": searches for L+1 curtains
/// dual to one candidate geodesic, spaced more than 1 apart, each containing a
/// sampled point of h1 and a sampled point of h2. Candidate geodesics join
/// sampled points of the two curtains (farthest pairs first, then random).
template <class S>
SeparationReport<S> l_separated(const S& s, const Curtain<S>& h1, const Curtain<S>& h2, int L,
                                const Budget& budget, CounterRng& rng) {
  using P = typename S::Point;
  if (L < 1) throw std::invalid_argument("l_separated: L must be >= 1");
  SeparationReport<S> rep;
  rep.L = L;
  rep.budget = budget;
  const P c1 = pole_point(s, h1, h1.t), c2 = pole_point(s, h2, h2.t);
  const double radius =
      std::isnan(budget.window_radius) ? s.distance(c1, c2) + 10.0 : budget.window_radius;
  rep.radius_used = radius;
  const auto s1 = sample_curtain(s, h1, budget.samples, radius, rng);
  const auto s2 = sample_curtain(s, h2, budget.samples, radius, rng);
  rep.samples_used = static_cast<int>(s1.size() + s2.size());
  if (s1.empty() || s2.empty())
    throw std::domain_error("l_separated: no curtain point survived sampling");
  if (!detail::curtains_disjoint(s, h1, h2, s1, s2))
    throw std::domain_error("l_separated: curtains are not disjoint");

  // Candidate endpoints: cross pairs by decreasing distance, then random pairs.
  struct Pair {
    const P* p;
    const P* q;
    double d;
  };
  std::vector<Pair> cross;
  for (const auto& p : s1)
    for (const auto& q : s2) cross.push_back({&p, &q, s.distance(p, q)});
  const std::size_t far =
      std::min<std::size_t>(cross.size(), static_cast<std::size_t>(budget.candidates / 2));
  std::partial_sort(cross.begin(), cross.begin() + static_cast<std::ptrdiff_t>(far), cross.end(),
                    [](const Pair& a, const Pair& b) { return a.d > b.d; });
  std::vector<const P*> pool;
  for (const auto& p : s1) pool.push_back(&p);
  for (const auto& q : s2) pool.push_back(&q);

  const double need = static_cast<double>(L) + 1.0;
  std::vector<double> u1(s1.size()), u2(s2.size());
  auto attempt = [&](const P& a, const P& b) {
    ++rep.candidates_tried;
    const auto sigma = s.geodesic(a, b);
    if (!(sigma.length > need)) return false;
    for (std::size_t i = 0; i < s1.size(); ++i) u1[i] = s.project_param(sigma, s1[i]);
    for (std::size_t i = 0; i < s2.size(); ++i) u2[i] = s.project_param(sigma, s2[i]);
    const auto feasible =
        detail::intersect(detail::merged_windows(u1), detail::merged_windows(u2));
    std::vector<double> picks;
    double next = 0.5 + kChainGap;
    for (const auto& [lo, hi] : feasible) {
      double t = std::max(lo, next);
      while (t <= hi && t + 0.5 < sigma.length) {
        picks.push_back(t);
        next = t + 1.0 + kChainGap;
        t = next;
      }
      if (picks.size() >= static_cast<std::size_t>(L) + 1) break;
    }
    if (picks.size() < static_cast<std::size_t>(L) + 1) return false;
    picks.resize(static_cast<std::size_t>(L) + 1);

    Chain<S> chain;
    chain.ref = a;
    std::vector<P> w1, w2;
    for (double t : picks) {
      auto h = dual_curtain(s, a, b, t);
      auto meeting = [&](const std::vector<P>& pts, const std::vector<double>& us) -> const P* {
        for (std::size_t i = 0; i < pts.size(); ++i)
          if (std::abs(us[i] - t) <= 0.5 - 0.5 * kPoleMargin &&
              side_of(s, h, pts[i]) == Side::pole)
            return &pts[i];
        return nullptr;
      };
      const P* m1 = meeting(s1, u1);
      const P* m2 = meeting(s2, u2);
      if (!m1 || !m2) return false;
      w1.push_back(*m1);
      w2.push_back(*m2);
      chain.curtains.push_back(std::move(h));
    }
    if (side_of(s, chain.curtains.front(), a) != Side::minus) return false;
    rep.verdict = Verdict::falsified;
    rep.witness = std::move(chain);
    rep.meets_first = std::move(w1);
    rep.meets_second = std::move(w2);
    return true;
  };

  // Spaces with a flat factor first try factor-aligned segments through the
  // farthest pairs. Sampled pairs almost never span those directions, and the
  // meeting points come from a search along the other factor.
  if constexpr (requires(const S& sp, const P& p, CounterRng& r) { sp.factor_segments(p, p, 1.0, r); }) {
    auto member = [&](const Curtain<S>& h, const Curtain<S>& target,
                      const std::vector<P>& fixed) -> std::optional<P> {
      for (const auto& p : fixed)
        if (side_of(s, h, p) == Side::pole && side_of(s, target, p) == Side::pole) return p;
      auto p = s.factor_meet(h.dual, h.t, target.dual, target.lo() + kPoleMargin,
                             target.hi() - kPoleMargin, rng);
      if (p && side_of(s, h, *p) == Side::pole && side_of(s, target, *p) == Side::pole) return p;
      return std::nullopt;
    };
    for (std::size_t c = 0; c < std::min<std::size_t>(far, 8); ++c)
      for (const auto& [a, b] : s.factor_segments(*cross[c].p, *cross[c].q, radius, rng)) {
        ++rep.candidates_tried;
        const double len = s.distance(a, b);
        Chain<S> chain;
        chain.ref = a;
        std::vector<P> w1, w2;
        const auto need_size = static_cast<std::size_t>(L) + 1;
        for (double t = 0.5 + kChainGap; t + 0.5 < len && chain.size() < need_size;
             t += 1.0 + kChainGap) {
          auto h = dual_curtain(s, a, b, t);
          auto m1 = member(h, h1, s1);
          if (!m1) continue;
          auto m2 = member(h, h2, s2);
          if (!m2) continue;
          w1.push_back(std::move(*m1));
          w2.push_back(std::move(*m2));
          chain.curtains.push_back(std::move(h));
        }
        if (chain.size() < need_size) continue;
        rep.verdict = Verdict::falsified;
        rep.witness = std::move(chain);
        rep.meets_first = std::move(w1);
        rep.meets_second = std::move(w2);
        return rep;
      }
  }
  for (int c = 0; c < budget.candidates; ++c) {
    const P* a;
    const P* b;
    if (static_cast<std::size_t>(c) < far) {
      a = cross[static_cast<std::size_t>(c)].p;
      b = cross[static_cast<std::size_t>(c)].q;
    } else {
      a = pool[rng.index(pool.size())];
      b = pool[rng.index(pool.size())];
    }
    if (attempt(*a, *b)) return rep;
  }
  return rep;
}

template <class S>
SeparationReport<S> l_separated(const S& s, const Curtain<S>& h1, const Curtain<S>& h2, int L,
                                const Budget& budget) {
  CounterRng rng(budget.seed, budget.key, StreamDomain::audit);
  return l_separated(s, h1, h2, L, budget, rng);
}

/// Greedy chain of curtains dual to [x,y]: poles scanned left to right (first
/// at t = 1/2 + gap, then the predecessor's t + 1 + gap, advancing by 1 on
/// rejection), each accepted when the falsifier fails against the previous
/// accepted curtain. Separation from the nearest predecessor suffices: any
/// curtain meeting h_i and h_k (i < j < k) is connected and so meets h_j too.
template <class S>
Chain<S> greedy_dual_L_chain(const S& s, const typename S::Point& x, const typename S::Point& y,
                             int L, const Budget& budget) {
  Chain<S> out;
  out.ref = x;
  const double len = s.distance(x, y);
  if (!(len > 1.0)) return out;
  CounterRng rng(budget.seed, budget.key, StreamDomain::audit);
  double t = 0.5 + kChainGap;
  while (t + 0.5 < len) {
    auto h = dual_curtain(s, x, y, t);
    if (out.empty()) {
      out.curtains.push_back(std::move(h));
      t += 1.0 + kChainGap;
      continue;
    }
    const auto rep = l_separated(s, out.curtains.back(), h, L, budget, rng);
    if (rep.verdict == Verdict::certified_up_to_budget) {
      out.curtains.push_back(std::move(h));
      t += 1.0 + kChainGap;
    } else {
      t += 1.0;
    }
  }
  return out;
}

/// Certified lower bound 1 + |greedy chain| for the curtain metric d_L.
template <class S>
int d_L_lower(const S& s, const typename S::Point& x, const typename S::Point& y, int L,
              const Budget& budget) {
  if (s.distance(x, y) == 0.0) return 0;
  return 1 + static_cast<int>(greedy_dual_L_chain(s, x, y, L, budget).size());
}

}  // namespace curtainlab::curtains
