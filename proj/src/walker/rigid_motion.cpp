#include <charconv>
#include <cmath>
#include <numbers>

#include "curtainlab/walker/isometry.hpp"

namespace curtainlab::walker {

using geometry::EucDirection;
using geometry::EucPoint;

namespace {

double wrap(double a) {
  a = std::remainder(a, 2 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2 * std::numbers::pi;
  return a;
}

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

RigidMotion identity(const EuclideanPlane&) { return {}; }

RigidMotion compose(const EuclideanPlane&, const RigidMotion& g, const RigidMotion& h) {
  const double c = std::cos(g.angle), s = std::sin(g.angle);
  return {wrap(g.angle + h.angle), c * h.tx - s * h.ty + g.tx, s * h.tx + c * h.ty + g.ty};
}

void accumulate(const EuclideanPlane& s, RigidMotion& g, const RigidMotion& h) {
  g = compose(s, g, h);
}

RigidMotion inverse(const EuclideanPlane&, const RigidMotion& g) {
  const double c = std::cos(g.angle), s = std::sin(g.angle);
  return {wrap(-g.angle), -(c * g.tx + s * g.ty), -(-s * g.tx + c * g.ty)};
}

EucPoint act(const EuclideanPlane&, const RigidMotion& g, const EucPoint& x) {
  const double c = std::cos(g.angle), s = std::sin(g.angle);
  return {c * x.x - s * x.y + g.tx, s * x.x + c * x.y + g.ty};
}

EucDirection act_boundary(const EuclideanPlane&, const RigidMotion& g, const EucDirection& u) {
  const double c = std::cos(g.angle), s = std::sin(g.angle);
  return {c * u.ux - s * u.uy, s * u.ux + c * u.uy};
}

double displacement(const EuclideanPlane& sp, const RigidMotion& g, const EucPoint& o) {
  return sp.distance(o, act(sp, g, o));
}

double orbit_busemann(const EuclideanPlane& sp, const EucDirection& xi, const EucPoint& o,
                      const RigidMotion& g) {
  return sp.busemann(xi, o, act(sp, g, o));
}

double cocycle(const EuclideanPlane& sp, const RigidMotion& g, const EucDirection& xi,
               const EucPoint& o) {
  return orbit_busemann(sp, xi, o, inverse(sp, g));
}

EucDirection orbit_ray(const EuclideanPlane& sp, const RigidMotion& g, const EucPoint& o) {
  return sp.ray_endpoint(o, act(sp, g, o));
}

Classification classify(const EuclideanPlane&, const RigidMotion& g) {
  Classification out;
  if (std::abs(g.angle) > 1e-12) {
    out.kind = Kind::elliptic;
    return out;
  }
  const double t = std::hypot(g.tx, g.ty);
  if (t <= 1e-12) return out;
  // Every translation axis bounds a flat half-plane.
  out.kind = Kind::axial;
  out.translation_length = t;
  out.contracting = Contracting::no;
  return out;
}

std::optional<geometry::EucSegment> axis_segment(const EuclideanPlane& sp, const RigidMotion& g,
                                                 const EucPoint& o, double half_length) {
  if (classify(sp, g).kind != Kind::axial) return std::nullopt;
  const double t = std::hypot(g.tx, g.ty);
  const double ux = g.tx / t, uy = g.ty / t;
  return sp.geodesic({o.x - half_length * ux, o.y - half_length * uy},
                     {o.x + half_length * ux, o.y + half_length * uy});
}

std::string format(const EuclideanPlane&, const RigidMotion& g) {
  return "rigid[" + num(g.angle) + "," + num(g.tx) + "," + num(g.ty) + "]";
}

bool same(const EuclideanPlane&, const RigidMotion& g, const RigidMotion& h) {
  return std::abs(wrap(g.angle - h.angle)) <= 1e-9 && std::abs(g.tx - h.tx) <= 1e-9 &&
         std::abs(g.ty - h.ty) <= 1e-9;
}

}  // namespace curtainlab::walker
