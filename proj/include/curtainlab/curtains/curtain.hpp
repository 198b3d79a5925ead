#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curtainlab/rng.hpp"

namespace curtainlab::curtains {

enum class Side { minus, pole, plus };

inline std::string to_string(Side s) {
  switch (s) {
    case Side::minus: return "minus";
    case Side::pole: return "pole";
    case Side::plus: return "plus";
  }
  return "?";
}

/// A sample landed on a pole where an open halfspace was required.
struct Indeterminate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Curtains that fail the chain condition; `index` is the first offender.
struct ChainViolation : std::domain_error {
  ChainViolation(std::size_t i, const std::string& what)
      : std::domain_error(what), index(i) {}
  std::size_t index;
};

/// h = pi^-1(gamma([t - 1/2, t + 1/2])) for the geodesic gamma = [x, y].
template <class S>
struct Curtain {
  typename S::Point x, y;
  typename S::Segment dual;
  double t = 0.0;

  double lo() const { return t - 0.5; }
  double hi() const { return t + 0.5; }
};

inline constexpr double kPoleSlack = 1e-12;
/// Witness points are kept this far inside pole boundaries.
inline constexpr double kPoleMargin = 1e-7;

template <class S>
Curtain<S> dual_curtain(const S& s, const typename S::Point& x, const typename S::Point& y,
                        double t) {
  Curtain<S> h{x, y, s.geodesic(x, y), t};
  if (!(t - 0.5 >= -kPoleSlack) || !(t + 0.5 <= h.dual.length + kPoleSlack))
    throw std::domain_error("curtain pole [t-1/2, t+1/2] must lie inside the geodesic");
  return h;
}

/// Same set with the halfspaces swapped.
template <class S>
Curtain<S> reversed(const S& s, const Curtain<S>& h) {
  Curtain<S> r{h.y, h.x, s.geodesic(h.y, h.x), 0.0};
  r.t = r.dual.length - h.t;
  return r;
}

/// Points projecting exactly onto t +- 1/2 belong to the (closed) pole.
template <class S>
Side side_of(const S& s, const Curtain<S>& h, const typename S::Point& p) {
  const double u = s.project_param(h.dual, p);
  if (u < h.lo()) return Side::minus;
  if (u > h.hi()) return Side::plus;
  return Side::pole;
}

template <class S>
typename S::Point pole_point(const S& s, const Curtain<S>& h, double u) {
  return s.eval(h.dual, std::clamp(u, h.lo(), h.hi()));
}

/// Points of h: fibres over pole parameters at distance up to `radius`,
/// stratified in distance. Numerically misplaced fibre points are dropped.
template <class S>
std::vector<typename S::Point> sample_curtain(const S& s, const Curtain<S>& h, int count,
                                              double radius, CounterRng& rng) {
  std::vector<typename S::Point> out;
  out.reserve(static_cast<std::size_t>(count) + 2);
  for (double u : {h.lo() + kPoleMargin, h.hi() - kPoleMargin}) {
    auto p = pole_point(s, h, u);
    if (side_of(s, h, p) == Side::pole) out.push_back(std::move(p));
  }
  for (int k = 0; k < count; ++k) {
    const double u = s.fiber_param(h.dual, h.lo(), h.hi(), rng);
    const double dist = radius * (k + rng.uniform()) / count;
    auto p = s.fiber_point(h.dual, u, dist, rng);
    if (side_of(s, h, p) == Side::pole) out.push_back(std::move(p));
  }
  return out;
}

/// Points of the open halfspace h^- (or h^+ when plus is set) whose
/// projection lies within `depth` of the pole.
template <class S>
std::vector<typename S::Point> sample_halfspace(const S& s, const Curtain<S>& h, bool plus,
                                                int count, double depth, double radius,
                                                CounterRng& rng) {
  const double len = h.dual.length;
  const double lo = plus ? h.hi() : std::max(0.0, h.lo() - depth);
  const double hi = plus ? std::min(len, h.hi() + depth) : h.lo();
  std::vector<typename S::Point> out;
  if (!(hi > lo)) return out;
  const Side want = plus ? Side::plus : Side::minus;
  for (int k = 0; k < count; ++k) {
    const double u = rng.uniform() < 0.5 ? s.fiber_param(h.dual, lo, hi, rng)
                                         : rng.uniform(lo, hi);
    auto p = s.fiber_point(h.dual, u, radius * rng.uniform(), rng);
    if (side_of(s, h, p) == want) out.push_back(std::move(p));
  }
  return out;
}

/// True iff A lies in one open halfspace of h and B in the other.
template <class S>
bool separates(const S& s, const Curtain<S>& h, const std::vector<typename S::Point>& a,
               const std::vector<typename S::Point>& b) {
  if (a.empty() || b.empty()) return false;
  auto side = [&](const typename S::Point& p) {
    const Side v = side_of(s, h, p);
    if (v == Side::pole) throw Indeterminate("sample lies on the pole of the curtain");
    return v;
  };
  const Side first = side(a.front());
  for (const auto& p : a)
    if (side(p) != first) return false;
  for (const auto& p : b)
    if (side(p) == first) return false;
  return true;
}

/// Curtains ordered so that each separates its neighbours, oriented with the
/// reference point in every h_i^-.
template <class S>
struct Chain {
  std::vector<Curtain<S>> curtains;
  typename S::Point ref{};

  std::size_t size() const { return curtains.size(); }
  bool empty() const { return curtains.empty(); }
};

struct ChainSampling {
  int samples = 32;
  double radius = 10.0;
};

namespace detail {

template <class S>
bool same_dual(const S& s, const Curtain<S>& a, const Curtain<S>& b) {
  return s.distance(a.x, b.x) <= 1e-12 && s.distance(a.y, b.y) <= 1e-12;
}

}  // namespace detail

/// Validates the chain condition. Curtains dual to one common geodesic are
/// decided exactly (consecutive poles must be more than 1 apart); otherwise a
/// sampled certificate checks that h_{i-1} lies in h_i^- and h_{i+1} in h_i^+.
template <class S>
Chain<S> is_chain(const S& s, std::vector<Curtain<S>> cs, const typename S::Point& ref,
                  CounterRng& rng, ChainSampling sampling = {}) {
  if (cs.empty()) throw std::invalid_argument("is_chain: no curtains");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Side v = side_of(s, cs[i], ref);
    if (v == Side::pole)
      throw ChainViolation(i, "reference point lies on the pole of curtain " + std::to_string(i));
    if (v == Side::plus) cs[i] = reversed(s, cs[i]);
  }
  Chain<S> out{std::move(cs), ref};
  const auto& c = out.curtains;

  bool common = true;
  for (std::size_t i = 1; i < c.size() && common; ++i) common = detail::same_dual(s, c[0], c[i]);
  if (common) {
    for (std::size_t i = 1; i < c.size(); ++i)
      if (!(c[i].lo() > c[i - 1].hi()))
        throw ChainViolation(i, "curtain " + std::to_string(i) +
                                    " does not lie beyond its predecessor");
    return out;
  }

  std::vector<std::vector<typename S::Point>> samples;
  for (const auto& h : c) samples.push_back(sample_curtain(s, h, sampling.samples, sampling.radius, rng));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0)
      for (const auto& p : samples[i - 1])
        if (side_of(s, c[i], p) != Side::minus)
          throw ChainViolation(i, "curtain " + std::to_string(i) +
                                      " does not separate its predecessor from the reference");
    if (i + 1 < c.size())
      for (const auto& p : samples[i + 1])
        if (side_of(s, c[i], p) != Side::plus)
          throw ChainViolation(i, "curtain " + std::to_string(i) +
                                      " does not separate its successor from the reference");
  }
  return out;
}

template <class S>
struct DInf {
  int value = 0;
  Chain<S> chain;
};

/// ceil(d(x,y)) realized by ceil(d) - 1 curtains dual to [x,y] with equal
/// gaps, all strictly between x and y.
template <class S>
DInf<S> d_inf(const S& s, const typename S::Point& x, const typename S::Point& y) {
  const double d = s.distance(x, y);
  if (!(d > 0.0)) throw std::domain_error("d_inf needs distinct points");
  const double rounded = std::round(d);
  const int value = std::abs(d - rounded) <= 1e-12 ? static_cast<int>(rounded)
                                                   : static_cast<int>(std::ceil(d));
  DInf<S> out;
  out.value = std::max(value, 1);
  out.chain.ref = x;
  const int n = out.value - 1;
  const double gap = (d - n) / (n + 1);
  for (int k = 1; k <= n; ++k)
    out.chain.curtains.push_back(dual_curtain(s, x, y, k * gap + (k - 1) + 0.5));
  return out;
}

}  // namespace curtainlab::curtains
