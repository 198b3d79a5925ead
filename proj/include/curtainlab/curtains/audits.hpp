#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "curtainlab/curtains/separation.hpp"

namespace curtainlab::curtains {

struct AuditResult {
  std::size_t checked = 0;
  std::size_t violations = 0;
  /// Largest excess over the audited bound (<= 0 when everything passes).
  double worst = -std::numeric_limits<double>::infinity();
  std::string witness;

  bool passed() const { return violations == 0; }
  void merge(const AuditResult& o) {
    checked += o.checked;
    violations += o.violations;
    if (o.worst > worst) worst = o.worst;
    if (witness.empty()) witness = o.witness;
  }
};

/// Each point lies in exactly one of h^-, h, h^+, and the reversed curtain
/// (an independent projection) agrees with the swapped labels. Points within
/// 1e-9 of a pole boundary are skipped.
template <class S>
AuditResult partition_audit(const S& s, const Curtain<S>& h,
                            const std::vector<typename S::Point>& points) {
  AuditResult out;
  const Curtain<S> r = reversed(s, h);
  for (const auto& p : points) {
    const double u = s.project_param(h.dual, p);
    if (std::abs(u - h.lo()) < 1e-9 || std::abs(u - h.hi()) < 1e-9) continue;
    ++out.checked;
    const Side a = side_of(s, h, p), b = side_of(s, r, p);
    const int labels = (a == Side::minus) + (a == Side::pole) + (a == Side::plus);
    const bool agree = (a == Side::pole && b == Side::pole) ||
                       (a == Side::minus && b == Side::plus) ||
                       (a == Side::plus && b == Side::minus);
    if (labels != 1 || !agree) {
      ++out.violations;
      out.worst = 1.0;
      if (out.witness.empty()) out.witness = s.format(p);
    }
  }
  if (out.checked > 0 && out.violations == 0) out.worst = 0.0;
  return out;
}

/// d(h^-, h^+) >= 1 on sampled points near the pole; worst = 1 - min distance.
template <class S>
AuditResult thickness_audit(const S& s, const Curtain<S>& h, int count, CounterRng& rng,
                            double radius = 3.0) {
  AuditResult out;
  const auto minus = sample_halfspace(s, h, false, count, 0.5, radius, rng);
  const auto plus = sample_halfspace(s, h, true, count, 0.5, radius, rng);
  for (const auto& p : minus)
    for (const auto& q : plus) {
      ++out.checked;
      const double excess = 1.0 - s.distance(p, q);
      out.worst = std::max(out.worst, excess);
      if (excess > 1e-6) {
        ++out.violations;
        if (out.witness.empty()) out.witness = s.format(p) + " " + s.format(q);
      }
    }
  return out;
}

/// For x in h, the geodesic [x, pi_P(x)] to the pole P stays in h.
template <class S>
AuditResult star_convexity_audit(const S& s, const Curtain<S>& h,
                                 const std::vector<typename S::Point>& samples,
                                 int steps = 8) {
  AuditResult out;
  for (const auto& x : samples) {
    if (side_of(s, h, x) != Side::pole) continue;
    const auto foot = pole_point(s, h, s.project_param(h.dual, x));
    const auto seg = s.geodesic(x, foot);
    for (int k = 0; k <= steps; ++k) {
      const auto p = s.eval(seg, seg.length * k / steps);
      ++out.checked;
      const double u = s.project_param(h.dual, p);
      const double excess = std::max(h.lo() - u, u - h.hi());
      out.worst = std::max(out.worst, excess);
      if (excess > 1e-9) {
        ++out.violations;
        if (out.witness.empty()) out.witness = s.format(x);
      }
    }
  }
  return out;
}

struct BottleneckResult {
  double excess = -std::numeric_limits<double>::infinity();
  std::size_t samples_in_pole = 0;
};

/// max over p in [x2,y2] n h_2 of d(p, pi_gamma(p)) - (2L + 1), with gamma the
/// geodesic the three curtains are dual to. Requires x2 in h_1^- and y2 in h_3^+.
template <class S>
BottleneckResult bottleneck_audit(const S& s, const Chain<S>& chain3, const typename S::Point& x2,
                                  const typename S::Point& y2, int L, double step = 0.25) {
  if (chain3.size() != 3) throw std::domain_error("bottleneck audit needs a chain of 3 curtains");
  const auto& [h1, h2, h3] = std::tie(chain3.curtains[0], chain3.curtains[1], chain3.curtains[2]);
  if (!detail::same_dual(s, h1, h2) || !detail::same_dual(s, h1, h3))
    throw std::domain_error("bottleneck audit needs curtains dual to one geodesic");
  if (side_of(s, h1, h1.x) != Side::minus || side_of(s, h3, h3.y) != Side::plus ||
      side_of(s, h1, x2) != Side::minus || side_of(s, h3, y2) != Side::plus)
    throw std::domain_error("bottleneck audit: chain does not separate {x1,x2} from {y1,y2}");
  BottleneckResult out;
  const auto seg = s.geodesic(x2, y2);
  const int n = std::max(1, static_cast<int>(std::ceil(seg.length / step)));
  for (int k = 0; k <= n; ++k) {
    const auto p = s.eval(seg, seg.length * k / n);
    if (side_of(s, h2, p) != Side::pole) continue;
    ++out.samples_in_pole;
    const auto foot = s.eval(h2.dual, s.project_param(h2.dual, p));
    out.excess = std::max(out.excess, s.distance(p, foot) - (2.0 * L + 1.0));
  }
  return out;
}

/// Empirical hyperbolicity constant of d_L_lower over quadruples (x, y, z, o):
/// max of min((x|y)_o, (y|z)_o) - (x|z)_o.
template <class S>
double four_point_audit(const S& s, int L,
                        const std::vector<std::array<typename S::Point, 4>>& quadruples,
                        const Budget& budget) {
  if (quadruples.empty()) throw std::invalid_argument("four_point_audit: no quadruples");
  double delta = 0.0;
  for (const auto& [x, y, z, o] : quadruples) {
    auto d = [&](const typename S::Point& a, const typename S::Point& b) {
      return static_cast<double>(d_L_lower(s, a, b, L, budget));
    };
    const double dxo = d(x, o), dyo = d(y, o), dzo = d(z, o);
    const double xy = 0.5 * (dxo + dyo - d(x, y));
    const double yz = 0.5 * (dyo + dzo - d(y, z));
    const double xz = 0.5 * (dxo + dzo - d(x, z));
    delta = std::max(delta, std::min(xy, yz) - xz);
  }
  return delta;
}

}  // namespace curtainlab::curtains
