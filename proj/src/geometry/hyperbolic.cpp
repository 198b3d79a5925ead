#include "curtainlab/geometry/hyperbolic.hpp"

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

// Isometry z -> (z - o.x) / o.y taking o to i, as an SL2 matrix.
Mat2 recenter(const HypPoint& o) {
  const double r = std::sqrt(o.y);
  return {1.0 / r, -o.x / r, 0.0, r};
}

// Rotation about i whose action on the disk is w -> e^{i theta} w.
Mat2 rotation(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, s, -s, c};
}

}  // namespace

HypIdeal Mat2::apply(const HypIdeal& xi) const {
  if (xi.infinite) {
    if (c == 0.0) return HypIdeal::infinity();
    return HypIdeal::at(a / c);
  }
  const double den = c * xi.x + d;
  if (den == 0.0) return HypIdeal::infinity();
  return HypIdeal::at((a * xi.x + b) / den);
}

HypIdeal ideal_from_disk(Complex zeta) {
  const double gap = std::norm(1.0 - zeta);
  if (gap < 1e-300) return HypIdeal::infinity();
  return HypIdeal::at(-2.0 * zeta.imag() / gap);
}

Complex disk_from_ideal(const HypIdeal& xi) {
  if (xi.infinite) return {1.0, 0.0};
  const Complex w{xi.x, 0.0};
  const Complex i{0.0, 1.0};
  return (w - i) / (w + i);
}

void HyperbolicPlane::validate(const Point& p) const {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !(p.y > 0.0))
    throw std::domain_error("hyperbolic point must have finite coordinates and Im > 0");
}

void HyperbolicPlane::validate(const Boundary& xi) const {
  if (!xi.infinite && !std::isfinite(xi.x))
    throw std::domain_error("ideal point must be real or infinity");
}

namespace {
constexpr double kLongSegment = 8.0;
}  // namespace

double HyperbolicPlane::distance(const Point& p, const Point& q) const {
  const double chord = std::hypot(p.x - q.x, p.y - q.y);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.y * q.y)));
}

HypSegment HyperbolicPlane::geodesic(const Point& p, const Point& q) const {
  HypSegment g;
  g.a = p;
  g.b = q;
  g.length = distance(p, q);
  const Mat2 h = recenter(p);
  const Complex w = h.apply(q.z());
  const Complex i{0.0, 1.0};
  const Complex disk = (w - i) / (w + i);
  Mat2 k;
  if (std::abs(disk) > 0.0) {
    double phi = std::arg(disk);
    if (phi < 0) phi += 2 * std::numbers::pi;
    const double c = -std::cos(phi / 2), s = std::sin(phi / 2);
    k = {c, s, -s, c};
  }
  g.to_axis = k * h;
  g.from_axis = g.to_axis.adjugate();
  return g;
}

HypPoint HyperbolicPlane::eval(const Segment& g, double t) const {
  t = std::clamp(t, 0.0, g.length);
  if (t == 0.0) return g.a;
  if (t == g.length) return g.b;
  return HypPoint::from(g.from_axis.apply(Complex{0.0, std::exp(t)}));
}

double HyperbolicPlane::project_param(const Segment& g, const Point& p) const {
  if (g.length == 0.0) return 0.0;
  if (g.length <= kLongSegment) {
    const double t = std::log(std::abs(g.to_axis.apply(p.z())));
    return std::clamp(t, 0.0, g.length);
  }
  // Long segments: the recentring matrix loses the far end, so solve
  // cosh u / cosh(len - u) = cosh d(p,a) / cosh d(p,b) from distances alone.
  auto log_cosh = [](double d) { return d + std::log1p(std::exp(-2 * d)) - std::log(2.0); };
  const double len = g.length;
  const double log_r = log_cosh(distance(p, g.a)) - log_cosh(distance(p, g.b));
  const double num = std::expm1(log_r + len), den = -std::expm1(log_r - len);
  if (!(num > 0.0)) return 0.0;
  if (!(den > 0.0)) return len;
  return std::clamp(0.5 * (std::log(num) - std::log(den)), 0.0, len);
}

Projection<HypPoint> HyperbolicPlane::project(const Segment& g, const Point& p) const {
  const double t = project_param(g, p);
  return {eval(g, t), t};
}

double HyperbolicPlane::busemann(const Boundary& xi, const Point& base,
                                 const Point& z) const {
  // b_xi(z) = -log(Poisson-type kernel); the additive constant cancels.
  auto kernel = [&](const Point& p) {
    if (xi.infinite) return std::log(p.y);
    const double dx = p.x - xi.x;
    return std::log(p.y) - std::log(dx * dx + p.y * p.y);
  };
  return kernel(base) - kernel(z);
}

double HyperbolicPlane::boundary_gromov_product(const Boundary& x, const Boundary& y,
                                                const Point& o) const {
  const Mat2 h = recenter(o);
  const Complex wx = disk_from_ideal(h.apply(x)), wy = disk_from_ideal(h.apply(y));
  const double half_chord = 0.5 * std::abs(wx - wy);
  if (half_chord <= 0.0) return kInfinity;
  return std::max(0.0, -std::log(std::min(1.0, half_chord)));
}

HypPoint HyperbolicPlane::approximant(const Boundary& xi, const Point& o,
                                      double depth) const {
  const Mat2 h = recenter(o);
  const Complex zeta = disk_from_ideal(h.apply(xi));
  const Complex w = std::tanh(depth / 2) * zeta;
  const Complex i{0.0, 1.0};
  const Complex z = i * (1.0 + w) / (1.0 - w);
  return HypPoint::from(h.adjugate().apply(z));
}

HypIdeal HyperbolicPlane::ray_endpoint(const Point& o, const Point& p) const {
  const Mat2 h = recenter(o);
  const Complex w = h.apply(p.z());
  const Complex i{0.0, 1.0};
  const Complex disk = (w - i) / (w + i);
  const double r = std::abs(disk);
  if (r == 0.0) throw std::domain_error("ray endpoint undefined for p == o");
  return h.adjugate().apply(ideal_from_disk(disk / r));
}

HypPoint HyperbolicPlane::sample_ball(const Point& c, double r, CounterRng& rng) const {
  const double rho = r * rng.uniform();
  const double theta = 2 * std::numbers::pi * rng.uniform();
  const Mat2 m = recenter(c).adjugate() * rotation(theta);
  return HypPoint::from(m.apply(Complex{0.0, std::exp(rho)}));
}

HypPoint HyperbolicPlane::fiber_point(const Segment& g, double u, double dist,
                                      CounterRng& rng) const {
  u = std::clamp(u, 0.0, g.length);
  const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
  const Complex local = std::exp(u) * Complex{side * std::tanh(dist), 1.0 / std::cosh(dist)};
  return HypPoint::from(g.from_axis.apply(local));
}

std::string HyperbolicPlane::format(const Point& p) const {
  return "(" + num(p.x) + "," + num(p.y) + ")";
}

std::string HyperbolicPlane::format(const Boundary& xi) const {
  return xi.infinite ? "inf" : num(xi.x);
}

}  // namespace curtainlab::geometry
