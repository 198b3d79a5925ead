#include <charconv>
#include <cmath>
#include <stdexcept>

#include "curtainlab/walker/isometry.hpp"

namespace curtainlab::walker {

using geometry::ProdPoint;
using geometry::ProdRay;

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

TreeLineMotion identity(const TreeTimesLine&) { return {}; }

TreeLineMotion compose(const TreeTimesLine& s, const TreeLineMotion& g,
                       const TreeLineMotion& h) {
  return {compose(s.tree(), g.w, h.w), g.shift + h.shift};
}

void accumulate(const TreeTimesLine& s, TreeLineMotion& g, const TreeLineMotion& h) {
  accumulate(s.tree(), g.w, h.w);
  g.shift += h.shift;
}

TreeLineMotion inverse(const TreeTimesLine& s, const TreeLineMotion& g) {
  return {inverse(s.tree(), g.w), -g.shift};
}

ProdPoint act(const TreeTimesLine& s, const TreeLineMotion& g, const ProdPoint& x) {
  return {act(s.tree(), g.w, x.t), x.r + g.shift};
}

ProdRay act_boundary(const TreeTimesLine& s, const TreeLineMotion& g, const ProdRay& xi) {
  ProdRay out = xi;
  if (xi.c > 0.0) out.ray = act_boundary(s.tree(), g.w, xi.ray);
  return out;
}

double displacement(const TreeTimesLine& s, const TreeLineMotion& g, const ProdPoint& o) {
  return std::hypot(displacement(s.tree(), g.w, o.t), g.shift);
}

double orbit_busemann(const TreeTimesLine& s, const ProdRay& xi, const ProdPoint& o,
                      const TreeLineMotion& g) {
  double v = -xi.s * g.shift;
  if (xi.c > 0.0) v += xi.c * orbit_busemann(s.tree(), xi.ray, o.t, g.w);
  return v;
}

double cocycle(const TreeTimesLine& s, const TreeLineMotion& g, const ProdRay& xi,
               const ProdPoint& o) {
  double v = xi.s * g.shift;
  if (xi.c > 0.0) v += xi.c * cocycle(s.tree(), g.w, xi.ray, o.t);
  return v;
}

ProdRay orbit_ray(const TreeTimesLine& s, const TreeLineMotion& g, const ProdPoint& o) {
  const double dt = displacement(s.tree(), g.w, o.t);
  const double d = std::hypot(dt, g.shift);
  if (d == 0.0) throw std::domain_error("orbit ray undefined: element fixes the basepoint");
  ProdRay out;
  out.c = dt / d;
  out.s = g.shift / d;
  if (dt > 0.0) out.ray = orbit_ray(s.tree(), g.w, o.t);
  return out;
}

Classification classify(const TreeTimesLine& s, const TreeLineMotion& g) {
  const Classification tree = classify(s.tree(), g.w);
  Classification out;
  out.translation_length = std::hypot(tree.translation_length, g.shift);
  if (g.w.empty() && std::abs(g.shift) <= 1e-12) return out;
  if (out.translation_length == 0.0) {
    out.kind = Kind::elliptic;
    return out;
  }
  // Any axis extends to a flat strip (tree axis x R, or a fibre x R).
  out.kind = Kind::axial;
  out.contracting = Contracting::no;
  return out;
}

std::optional<geometry::ProdSegment> axis_segment(const TreeTimesLine& s,
                                                  const TreeLineMotion& g, const ProdPoint& o,
                                                  double half_length) {
  const Classification c = classify(s, g);
  if (c.kind != Kind::axial) return std::nullopt;
  const Classification ct = classify(s.tree(), g.w);
  if (ct.kind == Kind::axial) {
    const auto tree_axis = axis_segment(s.tree(), g.w, o.t, half_length);
    const double len = tree_axis->length;
    const double rise = g.shift * len / ct.translation_length;
    return s.geodesic({tree_axis->a, o.r - rise / 2}, {tree_axis->b, o.r + rise / 2});
  }
  geometry::TreePoint fixed = o.t;
  if (ct.kind == Kind::elliptic) {
    Word u, core;
    cyclic_reduction(s.tree(), g.w, u, core);
    fixed = s.tree().on_edge(u, core[0], 0.5);
  }
  return s.geodesic({fixed, o.r - half_length}, {fixed, o.r + half_length});
}

std::string format(const TreeTimesLine& s, const TreeLineMotion& g) {
  return "(" + format(s.tree(), g.w) + "," + num(g.shift) + ")";
}

bool same(const TreeTimesLine&, const TreeLineMotion& g, const TreeLineMotion& h) {
  return g.w == h.w && std::abs(g.shift - h.shift) <= 1e-9;
}

}  // namespace curtainlab::walker
