#include "curtainlab/geometry/product.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace curtainlab::geometry {

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string TreeTimesLine::name() const {
  return "tree-x-line(valence=" + std::to_string(tree_.valence()) + ")";
}

void TreeTimesLine::validate(const Point& p) const {
  tree_.validate(p.t);
  if (!std::isfinite(p.r)) throw std::domain_error("line coordinate must be finite");
}

void TreeTimesLine::validate(const Boundary& xi) const {
  if (xi.c < 0.0 || std::abs(xi.c * xi.c + xi.s * xi.s - 1.0) > 1e-9)
    throw std::domain_error("product ideal point needs c >= 0 and c^2 + s^2 = 1");
  if (xi.c > 0.0) tree_.validate(xi.ray);
}

double TreeTimesLine::distance(const Point& p, const Point& q) const {
  return std::hypot(tree_.distance(p.t, q.t), p.r - q.r);
}

ProdSegment TreeTimesLine::geodesic(const Point& p, const Point& q) const {
  ProdSegment g;
  g.tree = tree_.geodesic(p.t, q.t);
  g.r0 = p.r;
  g.r1 = q.r;
  g.length = std::hypot(g.tree.length, q.r - p.r);
  if (g.length > 0.0) {
    g.c = g.tree.length / g.length;
    g.sn = (q.r - p.r) / g.length;
  }
  return g;
}

ProdPoint TreeTimesLine::eval(const Segment& g, double t) const {
  t = std::clamp(t, 0.0, g.length);
  if (t == g.length) return {g.tree.b, g.r1};
  return {tree_.eval(g.tree, g.c * t), g.r0 + g.sn * t};
}

double TreeTimesLine::project_param(const Segment& g, const Point& p) const {
  if (g.length == 0.0) return 0.0;
  // Tree distance to alpha(s) is h + |s - u|; minimize the convex
  // piecewise-quadratic (h + |c t - u|)^2 + (delta - sn t)^2 over candidates.
  const double u = tree_.project_param(g.tree, p.t);
  const double h = tree_.distance(p.t, tree_.eval(g.tree, u));
  const double delta = p.r - g.r0;
  auto f = [&](double t) {
    const double a = h + std::abs(g.c * t - u), b = delta - g.sn * t;
    return a * a + b * b;
  };
  std::array<double, 5> cands{0.0, g.length, g.c > 0.0 ? u / g.c : 0.0,
                              g.c * (u - h) + g.sn * delta, g.c * (u + h) + g.sn * delta};
  double best_t = 0.0, best = kInfinity;
  for (double t : cands) {
    t = std::clamp(t, 0.0, g.length);
    const double v = f(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  return best_t;
}

Projection<ProdPoint> TreeTimesLine::project(const Segment& g, const Point& p) const {
  const double t = project_param(g, p);
  return {eval(g, t), t};
}

double TreeTimesLine::busemann(const Boundary& xi, const Point& base,
                               const Point& z) const {
  double v = -xi.s * (z.r - base.r);
  if (xi.c > 0.0) v += xi.c * tree_.busemann(xi.ray, base.t, z.t);
  return v;
}

double TreeTimesLine::boundary_gromov_product(const Boundary& x, const Boundary& y,
                                              const Point& o) const {
  if (std::abs(x.s + y.s) > 1e-12 || std::abs(x.c - y.c) > 1e-12) return kInfinity;
  if (x.c < 1e-15) return 0.0;
  const double tree_part = tree_.boundary_gromov_product(x.ray, y.ray, o.t);
  return tree_part == kInfinity ? kInfinity : x.c * tree_part;
}

ProdPoint TreeTimesLine::approximant(const Boundary& xi, const Point& o,
                                     double depth) const {
  ProdPoint out{o.t, o.r + xi.s * depth};
  if (xi.c > 0.0) {
    const double td = xi.c * depth;
    const auto k = static_cast<std::size_t>(std::floor(td));
    const TreeRay deep = tree_.deepened(xi.ray, k + 1);
    Word v(deep.prefix.begin(), deep.prefix.begin() + static_cast<std::ptrdiff_t>(k));
    out.t = tree_.on_edge(v, deep.prefix[k], td - static_cast<double>(k));
  }
  return out;
}

ProdRay TreeTimesLine::ray(const TreeRay& r, double angle) const {
  ProdRay out{r, std::cos(angle), std::sin(angle)};
  if (out.c < 0.0) throw std::domain_error("product ray angle must lie in [-pi/2, pi/2]");
  if (out.c < 1e-15) out.c = 0.0;
  return out;
}

ProdPoint TreeTimesLine::sample_ball(const Point& c, double r, CounterRng& rng) const {
  const double rho = r * std::sqrt(rng.uniform());
  const double phi = 2 * std::numbers::pi * rng.uniform();
  return {tree_.sample_sphere(c.t, rho * std::abs(std::cos(phi)), rng),
          c.r + rho * std::sin(phi)};
}

double TreeTimesLine::fiber_param(const Segment& g, double lo, double hi,
                                  CounterRng& rng) const {
  if (g.c <= 0.0) return rng.uniform(lo, hi);
  const double tlo = std::max(0.0, g.c * lo), thi = std::min(g.tree.length, g.c * hi);
  if (tlo > thi) return rng.uniform(lo, hi);
  const double tu = tree_.fiber_param(g.tree, tlo, thi, rng);
  return std::clamp(tu / g.c, lo, hi);
}

ProdPoint TreeTimesLine::fiber_point(const Segment& g, double u, double dist,
                                     CounterRng& rng) const {
  u = std::clamp(u, 0.0, g.length);
  const ProdPoint base = eval(g, u);
  // Projection stays at u iff |sn * v| <= c * h for tree height h, line offset v.
  const double phi_max = std::atan2(g.c, std::abs(g.sn));
  const double phi = rng.uniform(-phi_max, phi_max);
  const double h = dist * std::cos(phi);
  double v = dist * std::sin(phi);
  const TreePoint tp = tree_.fiber_point(g.tree, g.c * u, h, rng);
  const double h_actual = tree_.distance(tp, base.t);
  if (std::abs(g.sn) > 0.0 && std::abs(g.sn * v) > g.c * h_actual) {
    const double cap = g.c * h_actual / std::abs(g.sn);
    v = v < 0 ? -cap : cap;
  }
  return {tp, base.r + v};
}

std::vector<std::pair<ProdPoint, ProdPoint>> TreeTimesLine::factor_segments(
    const Point& p, const Point& q, double radius, CounterRng& rng) const {
  std::vector<std::pair<ProdPoint, ProdPoint>> out;
  if (tree_.distance(p.t, q.t) > 0.0) {
    const auto g = tree_.geodesic(p.t, q.t);
    out.push_back({{tree_.fiber_point(g, 0.0, radius, rng), p.r}, {q.t, p.r}});
  }
  out.push_back({{p.t, p.r - radius}, {p.t, p.r + radius}});
  return out;
}

std::optional<ProdPoint> TreeTimesLine::factor_meet(const Segment& w, double t,
                                                    const Segment& target, double lo, double hi,
                                                    CounterRng& rng) const {
  auto inside = [&](const ProdPoint& p) {
    const double u = project_param(target, p);
    return u >= lo && u <= hi;
  };
  const double mid = 0.5 * (lo + hi);
  if (w.sn == 0.0) {
    // w's pole is (tree pole) x R: slide along the line.
    const TreePoint x = tree_.eval(w.tree, t);
    const double reach = 4.0 * (target.length + tree_.distance(x, target.tree.a) + 10.0);
    double a = std::min(target.r0, target.r1) - reach, b = std::max(target.r0, target.r1) + reach;
    const double fa = project_param(target, {x, a}) - mid;
    const double fb = project_param(target, {x, b}) - mid;
    if (fa * fb > 0.0) return std::nullopt;
    for (int i = 0; i < 200 && b - a > 1e-12; ++i) {
      const double m = 0.5 * (a + b);
      ((project_param(target, {x, m}) - mid) * fa > 0.0 ? a : b) = m;
    }
    const ProdPoint p{x, 0.5 * (a + b)};
    return inside(p) ? std::optional(p) : std::nullopt;
  }
  if (w.c == 0.0) {
    // w's pole is T x (interval): climb away from target in the tree.
    const double z = eval(w, t).r;
    const double tau = tree_.fiber_param(target.tree, std::max(0.0, target.c * lo),
                                         std::min(target.tree.length, target.c * hi), rng);
    if (const ProdPoint p{tree_.eval(target.tree, tau), z}; inside(p)) return p;
    for (double h = 1.0; h <= 1e6; h *= 2.0)
      if (const ProdPoint p{tree_.fiber_point(target.tree, tau, h, rng), z}; inside(p)) return p;
  }
  return std::nullopt;
}

std::string TreeTimesLine::format(const Point& p) const {
  return "(" + tree_.format(p.t) + "," + num(p.r) + ")";
}

std::string TreeTimesLine::format(const Boundary& xi) const {
  return "(" + tree_.format(xi.ray) + ",c=" + num(xi.c) + ",s=" + num(xi.s) + ")";
}

}  // namespace curtainlab::geometry
