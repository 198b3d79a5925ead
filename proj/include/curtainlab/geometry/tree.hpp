#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "curtainlab/geometry/alphabet.hpp"
#include "curtainlab/geometry/common.hpp"
#include "curtainlab/rng.hpp"

namespace curtainlab::geometry {

/// A point of the metric tree: the vertex `anchor` when offset == 0, otherwise
/// the point at distance `offset` from anchor on the edge to anchor*dir.
/// Normalized so that anchor*dir is a child of anchor (extends the word).
struct TreePoint {
  Word anchor;
  Letter dir = 0;
  double offset = 0.0;

  bool is_vertex() const { return offset == 0.0; }
  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

/// Infinite reduced word given by a materialized prefix and an optional
/// generator for further letters. Deepening only appends letters.
struct TreeRay {
  enum class Tail : std::uint8_t { none, periodic, uniform };

  Word prefix;
  Tail tail = Tail::none;
  // Tail letter j (the j-th letter after the prefix) is cycle[(phase + j) % |cycle|]
  // for periodic tails, and draw phase + j of stream (seed, key) for uniform
  // ones. Left multiplication may change the prefix length; phase keeps the
  // tail anchored to the end of the prefix.
  Word cycle;
  std::size_t phase = 0;
  std::uint64_t seed = 0;
  std::uint64_t key = 0;

  std::size_t depth() const { return prefix.size(); }
  bool extendable() const { return tail != Tail::none; }
};

struct TreeSegment {
  TreePoint a, b;
  double length = 0.0;
  bool same_edge = false;
  // Path a -> p (da), vertex path p -> q (dv edges), q -> b (db).
  Word p, q;
  Letter la = 0, lb = 0;  // letters from p toward a, from q toward b
  double da = 0.0, db = 0.0;
  std::size_t up = 0, dv = 0, cpq = 0;
};

class TreeSpace {
 public:
  using Point = TreePoint;
  using Boundary = TreeRay;
  using Segment = TreeSegment;

  explicit TreeSpace(int valence);

  const Alphabet& alphabet() const { return alphabet_; }
  int valence() const { return alphabet_.valence(); }
  std::string name() const;

  Point basepoint() const { return {}; }
  Point vertex(const Word& w) const { return {w, 0, 0.0}; }
  Point vertex(std::string_view text) const { return vertex(alphabet_.parse(text)); }
  /// Point at distance s in [0,1] from vertex v toward v*l.
  Point on_edge(const Word& v, Letter l, double s) const;
  Point normalize(Point x) const;
  void validate(const Point& x) const;

  double distance(const Point& x, const Point& y) const;
  Segment geodesic(const Point& x, const Point& y) const;
  Point eval(const Segment& g, double t) const;
  double project_param(const Segment& g, const Point& x) const;
  Projection<Point> project(const Segment& g, const Point& x) const;

  /// Busemann function of xi normalized at the identity vertex.
  double horofunction(const Boundary& xi, const Point& z) const;
  double busemann(const Boundary& xi, const Point& base, const Point& z) const;
  /// +infinity when the two proxies agree on their whole materialized depth.
  double boundary_gromov_product(const Boundary& x, const Boundary& y,
                                 const Point& o) const;
  /// The depth-D prefix vertex of xi.
  Point approximant(const Boundary& xi, const Point& o, double depth) const;

  // Boundary proxies.
  Boundary ray(std::string_view prefix, std::string_view cycle = "") const;
  Boundary periodic_ray(const Word& prefix, const Word& cycle) const;
  Boundary finite_ray(const Word& prefix) const;
  Boundary random_ray(std::uint64_t seed, std::uint64_t key,
                      std::size_t depth = kDefaultDepth) const;
  Boundary deepened(const Boundary& xi, std::size_t depth) const;
  void validate(const Boundary& xi) const;
  /// Length of the common prefix of xi with the finite word v (at most |v|).
  std::size_t common_prefix(const Boundary& xi, const Word& v) const;
  std::string format(const Boundary& xi) const;

  // Sampling.
  Point sample_ball(const Point& c, double r, CounterRng& rng) const;
  /// Random point at distance exactly r from c.
  Point sample_sphere(const Point& c, double r, CounterRng& rng) const {
    return walk_away(c, r, rng, nullptr, 0.0);
  }
  /// Parameter in [lo, hi] whose projection fibre is nontrivial when possible
  /// (vertex or endpoint parameters).
  double fiber_param(const Segment& g, double lo, double hi, CounterRng& rng) const;
  /// A point at distance about `dist` from eval(u) projecting onto eval(u).
  Point fiber_point(const Segment& g, double u, double dist, CounterRng& rng) const;

  std::string format(const Point& x) const;

  /// Letter k of xi beyond its prefix, given letter k-1.
  Letter letter_after(const Boundary& xi, std::size_t k, Letter prev) const;

 private:
  /// Non-backtracking random walk of length dist from start; when `avoid` is
  /// set, the first step must keep the projection onto it at parameter u.
  Point walk_away(const Point& start, double dist, CounterRng& rng,
                  const Segment* avoid, double u) const;

  Alphabet alphabet_;
};

}  // namespace curtainlab::geometry
