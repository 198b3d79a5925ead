#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "curtainlab/walker/isometry.hpp"

namespace curtainlab::walker {

using geometry::Complex;
using geometry::HypIdeal;
using geometry::HypPoint;
using geometry::Mat2;

namespace {

constexpr double kBig = 0x1p30;
constexpr double kSmall = 0x1p-30;
constexpr int kRenormPeriod = 64;

double max_abs(const Mobius& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

void rescale(Mobius& m) {
  const double mx = max_abs(m);
  if (mx == 0.0) throw std::domain_error("degenerate Moebius matrix");
  if (mx > kBig || mx < kSmall) {
    m.a /= mx;
    m.b /= mx;
    m.c /= mx;
    m.d /= mx;
    m.scale += std::log(mx);
  }
}

// Restores det = 1 when ad - bc can be computed without cancellation; for
// long products the cancellation error would exceed the drift being fixed.
void renormalize(Mobius& m) {
  m.since_renorm = 0;
  if (std::abs(m.scale) > 300.0) return;
  const double ad = m.a * m.d, bc = m.b * m.c;
  if (std::abs(ad - bc) < 1e-4 * (std::abs(ad) + std::abs(bc))) return;
  const double det = (ad - bc) * std::exp(2.0 * m.scale);
  if (!(det > 0.0) || !std::isfinite(det)) return;
  const double f = 1.0 / std::sqrt(det);
  m.a *= f;
  m.b *= f;
  m.c *= f;
  m.d *= f;
}

Mat2 recenter(const HypPoint& o) {
  const double r = std::sqrt(o.y);
  return {1.0 / r, -o.x / r, 0.0, r};
}

// H g H^-1 with H taking o to i; the scale is unchanged.
Mobius conjugated(const Mobius& g, const HypPoint& o) {
  if (o.x == 0.0 && o.y == 1.0) return g;
  const Mat2 h = recenter(o);
  const Mat2 m = h * g.mat() * h.adjugate();
  Mobius out{m.a, m.b, m.c, m.d, g.scale, g.since_renorm};
  rescale(out);
  return out;
}

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

Mobius Mobius::from(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0)) throw std::domain_error("Moebius matrix needs positive determinant");
  const double f = 1.0 / std::sqrt(det);
  Mobius m{a * f, b * f, c * f, d * f, 0.0, 0};
  rescale(m);
  return m;
}

Mobius identity(const HyperbolicPlane&) { return {}; }

Mobius compose(const HyperbolicPlane&, const Mobius& g, const Mobius& h) {
  Mobius m{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
           g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d,
           g.scale + h.scale, std::max(g.since_renorm, h.since_renorm) + 1};
  rescale(m);
  if (m.since_renorm >= kRenormPeriod) renormalize(m);
  return m;
}

void accumulate(const HyperbolicPlane& s, Mobius& g, const Mobius& h) { g = compose(s, g, h); }

Mobius inverse(const HyperbolicPlane&, const Mobius& g) {
  return {g.d, -g.b, -g.c, g.a, g.scale, g.since_renorm};
}

HypPoint act(const HyperbolicPlane&, const Mobius& g, const HypPoint& x) {
  return HypPoint::from(g.mat().apply(x.z()));
}

HypIdeal act_boundary(const HyperbolicPlane&, const Mobius& g, const HypIdeal& xi) {
  return g.mat().apply(xi);
}

double displacement(const HyperbolicPlane&, const Mobius& g, const HypPoint& o) {
  // cosh d(g i, i) = |g|_F^2 / 2 for det-1 g.
  const Mobius m = conjugated(g, o);
  const double fro = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
  return acosh_exp(2.0 * m.scale + std::log(fro / 2.0));
}

double orbit_busemann(const HyperbolicPlane&, const HypIdeal& xi, const HypPoint& o,
                      const Mobius& g) {
  const Mobius m = conjugated(g, o);
  const HypIdeal x = recenter(o).apply(xi);
  if (x.infinite) return std::log(m.c * m.c + m.d * m.d) + 2.0 * m.scale;
  const double p = m.a - x.x * m.c, q = m.b - x.x * m.d;
  return std::log(p * p + q * q) - std::log1p(x.x * x.x) + 2.0 * m.scale;
}

double cocycle(const HyperbolicPlane& s, const Mobius& g, const HypIdeal& xi,
               const HypPoint& o) {
  return orbit_busemann(s, xi, o, inverse(s, g));
}

HypIdeal orbit_ray(const HyperbolicPlane&, const Mobius& g, const HypPoint& o) {
  const Mobius m = conjugated(g, o);
  const Complex num_w{m.b + m.c, m.a - m.d}, den_w{m.b - m.c, m.a + m.d};
  const Complex w = num_w / den_w;
  const double r = std::abs(w);
  if (!(r > 1e-300)) throw std::domain_error("orbit ray undefined: element fixes the basepoint");
  return recenter(o).adjugate().apply(geometry::ideal_from_disk(w / r));
}

double log_abs_trace(const Mobius& g) {
  return g.scale + std::log(std::abs(g.a + g.d));
}

Classification classify(const HyperbolicPlane&, const Mobius& g) {
  Classification out;
  const double mx = max_abs(g);
  const double tol = 1e-12 * mx;
  if (std::abs(g.b) <= tol && std::abs(g.c) <= tol && std::abs(g.a - g.d) <= tol)
    return out;
  const double lt = log_abs_trace(g);
  const double tr = lt < 700.0 ? std::exp(lt) : geometry::kInfinity;
  if (std::abs(tr - 2.0) <= 1e-9) {
    out.kind = Kind::parabolic;
  } else if (tr < 2.0) {
    out.kind = Kind::elliptic;
  } else {
    out.kind = Kind::axial;
    out.translation_length = 2.0 * acosh_exp(lt - std::log(2.0));
    out.contracting = Contracting::yes;
  }
  return out;
}

std::optional<geometry::HypSegment> axis_segment(const HyperbolicPlane& s, const Mobius& g,
                                                 const HypPoint& o, double half_length) {
  if (classify(s, g).kind != Kind::axial) return std::nullopt;
  // Fixed points solve c z^2 + (d - a) z - b = 0.
  HypIdeal p, q;
  const double mx = max_abs(g);
  if (std::abs(g.c) <= 1e-14 * mx) {
    p = HypIdeal::infinity();
    q = HypIdeal::at(g.b / (g.a - g.d));
  } else {
    const double disc = (g.d - g.a) * (g.d - g.a) + 4.0 * g.b * g.c;
    const double root = std::sqrt(std::max(0.0, disc));
    p = HypIdeal::at((g.a - g.d + root) / (2.0 * g.c));
    q = HypIdeal::at((g.a - g.d - root) / (2.0 * g.c));
  }
  const double depth = std::min(half_length, 30.0);
  return s.geodesic(s.approximant(q, o, depth), s.approximant(p, o, depth));
}

std::string format(const HyperbolicPlane&, const Mobius& g) {
  // Canonical sign: first nonzero entry positive.
  double sign = 1.0;
  for (double v : {g.a, g.b, g.c, g.d})
    if (v != 0.0) {
      sign = v > 0 ? 1.0 : -1.0;
      break;
    }
  return "mobius[" + num(sign * g.a) + "," + num(sign * g.b) + ";" + num(sign * g.c) + "," +
         num(sign * g.d) + "]e^" + num(g.scale);
}

bool same(const HyperbolicPlane&, const Mobius& g, const Mobius& h) {
  const double f = std::exp(g.scale - h.scale);
  const double mx = std::max(max_abs(g) * f, max_abs(h));
  auto close = [&](double sign) {
    return std::abs(g.a * f - sign * h.a) <= 1e-9 * mx &&
           std::abs(g.b * f - sign * h.b) <= 1e-9 * mx &&
           std::abs(g.c * f - sign * h.c) <= 1e-9 * mx &&
           std::abs(g.d * f - sign * h.d) <= 1e-9 * mx;
  };
  return close(1.0) || close(-1.0);
}

}  // namespace curtainlab::walker
