#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curtainlab/geometry/tree.hpp"

namespace curtainlab::geometry {

struct ProdPoint {
  TreePoint t;
  double r = 0.0;
  friend bool operator==(const ProdPoint&, const ProdPoint&) = default;
};

/// Ideal point of T x R: rays (gamma(c s), sin * s) with c = cos(angle) >= 0
/// and sin = sin(angle) signed. When c == 0 the tree ray is irrelevant.
struct ProdRay {
  TreeRay ray;
  double c = 1.0;
  double s = 0.0;
};

struct ProdSegment {
  TreeSegment tree;
  double r0 = 0.0, r1 = 0.0;
  double length = 0.0;
  double c = 1.0;   // tree length / total length
  double sn = 0.0;  // (r1 - r0) / total length
};

/// Tree x line with the l2 product metric.
class TreeTimesLine {
 public:
  using Point = ProdPoint;
  using Boundary = ProdRay;
  using Segment = ProdSegment;

  explicit TreeTimesLine(int valence) : tree_(valence) {}

  const TreeSpace& tree() const { return tree_; }
  std::string name() const;
  Point basepoint() const { return {}; }
  void validate(const Point& p) const;
  void validate(const Boundary& xi) const;

  double distance(const Point& p, const Point& q) const;
  Segment geodesic(const Point& p, const Point& q) const;
  Point eval(const Segment& g, double t) const;
  double project_param(const Segment& g, const Point& p) const;
  Projection<Point> project(const Segment& g, const Point& p) const;

  double busemann(const Boundary& xi, const Point& base, const Point& z) const;
  double boundary_gromov_product(const Boundary& x, const Boundary& y,
                                 const Point& o) const;
  Point approximant(const Boundary& xi, const Point& o, double depth) const;
  Boundary ray(const TreeRay& r, double angle) const;

  Point sample_ball(const Point& c, double r, CounterRng& rng) const;
  double fiber_param(const Segment& g, double lo, double hi, CounterRng& rng) const;
  Point fiber_point(const Segment& g, double u, double dist, CounterRng& rng) const;
  /// Extra falsifier candidates at p's height: a tree path through p to q,
  /// extended by radius beyond p, and the line through p.
  std::vector<std::pair<Point, Point>> factor_segments(const Point& p, const Point& q,
                                                       double radius, CounterRng& rng) const;
  /// For a factor-aligned w, a point projecting to [t - 1/2, t + 1/2] on w and
  /// into [lo, hi] on target, found by a search along the other factor.
  std::optional<Point> factor_meet(const Segment& w, double t, const Segment& target, double lo,
                                   double hi, CounterRng& rng) const;

  std::string format(const Point& p) const;
  std::string format(const Boundary& xi) const;

 private:
  TreeSpace tree_;
};

}  // namespace curtainlab::geometry
