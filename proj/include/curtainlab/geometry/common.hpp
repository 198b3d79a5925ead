#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curtainlab::geometry {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Default materialization depth for boundary proxies.
inline constexpr std::size_t kDefaultDepth = 1000;

template <class P>
struct Projection {
  P foot;
  double t = 0.0;
};

/// (x|y)_o = (d(x,o) + d(y,o) - d(x,y)) / 2, clamped at 0 against rounding.
template <class S>
double gromov_product(const S& s, const typename S::Point& x,
                      const typename S::Point& y, const typename S::Point& o) {
  const double v = 0.5 * (s.distance(x, o) + s.distance(y, o) - s.distance(x, y));
  return std::max(0.0, v);
}

/// (m|x)_o = (d(o,m) - b^o_x(m)) / 2 for an interior m and ideal x.
template <class S>
double mixed_gromov_product(const S& s, const typename S::Point& m,
                            const typename S::Boundary& x,
                            const typename S::Point& o) {
  return 0.5 * (s.distance(o, m) - s.busemann(x, o, m));
}

template <class S>
typename S::Point midpoint(const S& s, const typename S::Point& x,
                           const typename S::Point& y) {
  const auto seg = s.geodesic(x, y);
  return s.eval(seg, 0.5 * seg.length);
}

/// Unit-speed point at distance depth from o toward xi: the n-th term of an
/// approximating sequence x_n -> xi.
template <class S>
typename S::Point boundary_approximant(const S& s, const typename S::Boundary& xi,
                                       const typename S::Point& o, double depth) {
  return s.approximant(xi, o, depth);
}

/// d(x_D, z) - d(x_D, base) for the depth-D approximant of xi.
template <class S>
double busemann_finite(const S& s, const typename S::Boundary& xi,
                       const typename S::Point& base, const typename S::Point& z,
                       double depth) {
  const auto xd = s.approximant(xi, base, depth);
  return s.distance(xd, z) - s.distance(xd, base);
}

/// Interior Gromov product of depth-D approximants of two ideal points.
template <class S>
double boundary_gromov_finite(const S& s, const typename S::Boundary& x,
                              const typename S::Boundary& y,
                              const typename S::Point& o, double depth) {
  return gromov_product(s, s.approximant(x, o, depth), s.approximant(y, o, depth), o);
}

}  // namespace curtainlab::geometry
