#include "curtainlab/geometry/euclidean.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace curtainlab::geometry {

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

EucDirection EucDirection::angle(double theta) {
  return {std::cos(theta), std::sin(theta)};
}

void EuclideanPlane::validate(const Point& p) const {
  if (!std::isfinite(p.x) || !std::isfinite(p.y))
    throw std::domain_error("euclidean point must be finite");
}

void EuclideanPlane::validate(const Boundary& u) const {
  if (std::abs(std::hypot(u.ux, u.uy) - 1.0) > 1e-9)
    throw std::domain_error("euclidean ideal point must be a unit direction");
}

double EuclideanPlane::distance(const Point& p, const Point& q) const {
  return std::hypot(p.x - q.x, p.y - q.y);
}

EucSegment EuclideanPlane::geodesic(const Point& p, const Point& q) const {
  EucSegment g{p, q, distance(p, q), 1.0, 0.0};
  if (g.length > 0.0) {
    g.ux = (q.x - p.x) / g.length;
    g.uy = (q.y - p.y) / g.length;
  }
  return g;
}

EucPoint EuclideanPlane::eval(const Segment& g, double t) const {
  t = std::clamp(t, 0.0, g.length);
  if (t == g.length) return g.b;
  return {g.a.x + t * g.ux, g.a.y + t * g.uy};
}

double EuclideanPlane::project_param(const Segment& g, const Point& p) const {
  const double t = (p.x - g.a.x) * g.ux + (p.y - g.a.y) * g.uy;
  return std::clamp(t, 0.0, g.length);
}

Projection<EucPoint> EuclideanPlane::project(const Segment& g, const Point& p) const {
  const double t = project_param(g, p);
  return {eval(g, t), t};
}

double EuclideanPlane::busemann(const Boundary& u, const Point& base,
                                const Point& z) const {
  return -(u.ux * (z.x - base.x) + u.uy * (z.y - base.y));
}

double EuclideanPlane::boundary_gromov_product(const Boundary& x, const Boundary& y,
                                               const Point&) const {
  if (std::hypot(x.ux + y.ux, x.uy + y.uy) < 1e-12) return 0.0;
  return kInfinity;
}

EucPoint EuclideanPlane::approximant(const Boundary& u, const Point& o,
                                     double depth) const {
  return {o.x + depth * u.ux, o.y + depth * u.uy};
}

EucDirection EuclideanPlane::ray_endpoint(const Point& o, const Point& p) const {
  const double r = distance(o, p);
  if (r == 0.0) throw std::domain_error("ray endpoint undefined for p == o");
  return {(p.x - o.x) / r, (p.y - o.y) / r};
}

EucPoint EuclideanPlane::sample_ball(const Point& c, double r, CounterRng& rng) const {
  const double rho = r * std::sqrt(rng.uniform());
  const double theta = 2 * std::numbers::pi * rng.uniform();
  return {c.x + rho * std::cos(theta), c.y + rho * std::sin(theta)};
}

EucPoint EuclideanPlane::fiber_point(const Segment& g, double u, double dist,
                                     CounterRng& rng) const {
  const Point base = eval(g, u);
  const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
  return {base.x - side * dist * g.uy, base.y + side * dist * g.ux};
}

std::string EuclideanPlane::format(const Point& p) const {
  return "(" + num(p.x) + "," + num(p.y) + ")";
}

std::string EuclideanPlane::format(const Boundary& u) const {
  return "dir(" + num(u.ux) + "," + num(u.uy) + ")";
}

}  // namespace curtainlab::geometry
