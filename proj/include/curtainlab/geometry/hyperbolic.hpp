#pragma once

#include <complex>
#include <string>

#include "curtainlab/geometry/common.hpp"
#include "curtainlab/rng.hpp"

namespace curtainlab::geometry {

using Complex = std::complex<double>;

/// Point of the upper half-plane model, y > 0.
struct HypPoint {
  double x = 0.0;
  double y = 1.0;

  Complex z() const { return {x, y}; }
  static HypPoint from(Complex w) { return {w.real(), w.imag()}; }
  friend bool operator==(const HypPoint&, const HypPoint&) = default;
};

/// Ideal point on R u {infinity}.
struct HypIdeal {
  bool infinite = false;
  double x = 0.0;

  static HypIdeal at(double v) { return {false, v}; }
  static HypIdeal infinity() { return {true, 0.0}; }
  friend bool operator==(const HypIdeal&, const HypIdeal&) = default;
};

/// Real 2x2 matrix acting by Moebius transformation.
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }
  HypIdeal apply(const HypIdeal& xi) const;
  Mat2 operator*(const Mat2& m) const {
    return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
  }
  double det() const { return a * d - b * c; }
  /// Inverse assuming det 1.
  Mat2 adjugate() const { return {d, -b, -c, a}; }
};

/// Geodesic [a, b] with an isometry to_axis carrying it onto [i, i e^length].
struct HypSegment {
  HypPoint a, b;
  double length = 0.0;
  Mat2 to_axis;
  Mat2 from_axis;
};

class HyperbolicPlane {
 public:
  using Point = HypPoint;
  using Boundary = HypIdeal;
  using Segment = HypSegment;

  std::string name() const { return "hyperbolic-plane"; }
  Point basepoint() const { return {0.0, 1.0}; }
  void validate(const Point& p) const;
  void validate(const Boundary& xi) const;

  double distance(const Point& p, const Point& q) const;
  Segment geodesic(const Point& p, const Point& q) const;
  Point eval(const Segment& g, double t) const;
  /// Closed form: the geodesic is mapped onto the imaginary axis, where the
  /// nearest-point map is z -> i|z|.
  double project_param(const Segment& g, const Point& p) const;
  Projection<Point> project(const Segment& g, const Point& p) const;

  double busemann(const Boundary& xi, const Point& base, const Point& z) const;
  double boundary_gromov_product(const Boundary& x, const Boundary& y,
                                 const Point& o) const;
  /// Point at distance `depth` from o on the ray toward xi (depth <= ~35).
  Point approximant(const Boundary& xi, const Point& o, double depth) const;
  /// Endpoint of the ray from o through p (p != o).
  Boundary ray_endpoint(const Point& o, const Point& p) const;

  Point sample_ball(const Point& c, double r, CounterRng& rng) const;
  double fiber_param(const Segment&, double lo, double hi, CounterRng& rng) const {
    return rng.uniform(lo, hi);
  }
  Point fiber_point(const Segment& g, double u, double dist, CounterRng& rng) const;

  std::string format(const Point& p) const;
  std::string format(const Boundary& xi) const;
};

/// Ideal endpoint of the geodesic ray from i toward the unit disk direction
/// zeta (|zeta| = 1), in the upper half-plane.
HypIdeal ideal_from_disk(Complex zeta);
/// Disk-model image (Cayley transform, i -> 0) of an ideal point.
Complex disk_from_ideal(const HypIdeal& xi);

}  // namespace curtainlab::geometry
