#pragma once

#include <string>

#include "curtainlab/geometry/common.hpp"
#include "curtainlab/rng.hpp"

namespace curtainlab::geometry {

struct EucPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const EucPoint&, const EucPoint&) = default;
};

/// Unit direction; the ideal point of all rays with that direction.
struct EucDirection {
  double ux = 1.0;
  double uy = 0.0;

  static EucDirection angle(double theta);
  friend bool operator==(const EucDirection&, const EucDirection&) = default;
};

struct EucSegment {
  EucPoint a, b;
  double length = 0.0;
  double ux = 1.0, uy = 0.0;
};

class EuclideanPlane {
 public:
  using Point = EucPoint;
  using Boundary = EucDirection;
  using Segment = EucSegment;

  std::string name() const { return "euclidean-plane"; }
  Point basepoint() const { return {}; }
  void validate(const Point& p) const;
  void validate(const Boundary& u) const;

  double distance(const Point& p, const Point& q) const;
  Segment geodesic(const Point& p, const Point& q) const;
  Point eval(const Segment& g, double t) const;
  double project_param(const Segment& g, const Point& p) const;
  Projection<Point> project(const Segment& g, const Point& p) const;

  double busemann(const Boundary& u, const Point& base, const Point& z) const;
  /// Finite (= 0) only for antipodal directions; +infinity otherwise.
  double boundary_gromov_product(const Boundary& x, const Boundary& y,
                                 const Point& o) const;
  Point approximant(const Boundary& u, const Point& o, double depth) const;
  Boundary ray_endpoint(const Point& o, const Point& p) const;

  Point sample_ball(const Point& c, double r, CounterRng& rng) const;
  double fiber_param(const Segment&, double lo, double hi, CounterRng& rng) const {
    return rng.uniform(lo, hi);
  }
  Point fiber_point(const Segment& g, double u, double dist, CounterRng& rng) const;

  std::string format(const Point& p) const;
  std::string format(const Boundary& u) const;
};

}  // namespace curtainlab::geometry
