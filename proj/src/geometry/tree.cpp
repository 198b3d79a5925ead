#include "curtainlab/geometry/tree.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace curtainlab::geometry {

namespace {

constexpr double kSnap = 1e-12;

// A vertex word optionally extended by one child letter, without copying.
struct VWord {
  const Word* w;
  int extra;  // -1 for none

  std::size_t size() const { return w->size() + (extra >= 0 ? 1 : 0); }
  Letter at(std::size_t k) const {
    return k < w->size() ? (*w)[k] : static_cast<Letter>(extra);
  }
  Word materialize() const {
    Word out = *w;
    if (extra >= 0) out.push_back(static_cast<Letter>(extra));
    return out;
  }
};

std::size_t vcp(const VWord& a, const VWord& b) {
  std::size_t k = common_prefix(*a.w, *b.w);
  const std::size_t n = std::min(a.size(), b.size());
  while (k < n && a.at(k) == b.at(k)) ++k;
  return k;
}

double vdist(const VWord& a, const VWord& b) {
  return static_cast<double>(a.size() + b.size() - 2 * vcp(a, b));
}

struct End {
  VWord v;
  double d;
};

// Edge endpoints of a point with distances to them.
int endpoints(const TreePoint& x, std::array<End, 2>& out) {
  out[0] = {{&x.anchor, -1}, x.offset};
  if (x.offset == 0.0) return 1;
  out[1] = {{&x.anchor, static_cast<int>(x.dir)}, 1.0 - x.offset};
  return 2;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

TreeSpace::TreeSpace(int valence) : alphabet_(valence) {}

std::string TreeSpace::name() const {
  return "tree(valence=" + std::to_string(valence()) + ")";
}

TreePoint TreeSpace::on_edge(const Word& v, Letter l, double s) const {
  if (s <= kSnap) return {v, 0, 0.0};
  if (s >= 1.0 - kSnap) {
    Word w = v;
    alphabet_.append(w, l);
    return {std::move(w), 0, 0.0};
  }
  if (!v.empty() && v.back() == alphabet_.inverse(l)) {
    Word parent(v.begin(), v.end() - 1);
    return {std::move(parent), v.back(), 1.0 - s};
  }
  return {v, l, s};
}

TreePoint TreeSpace::normalize(Point x) const {
  if (x.offset == 0.0) return {std::move(x.anchor), 0, 0.0};
  return on_edge(x.anchor, x.dir, x.offset);
}

void TreeSpace::validate(const Point& x) const {
  if (!alphabet_.is_reduced(x.anchor))
    throw std::domain_error("tree point anchor is not a reduced word");
  if (!(x.offset >= 0.0 && x.offset < 1.0))
    throw std::domain_error("tree point offset outside [0,1)");
  if (x.offset > 0.0) {
    if (!alphabet_.valid(x.dir)) throw std::domain_error("tree point direction invalid");
    if (!x.anchor.empty() && x.anchor.back() == alphabet_.inverse(x.dir))
      throw std::domain_error("tree point not normalized (edge points to parent)");
  }
}

double TreeSpace::distance(const Point& x, const Point& y) const {
  if (x.offset > 0.0 && y.offset > 0.0 && x.dir == y.dir && x.anchor == y.anchor)
    return std::abs(x.offset - y.offset);
  std::array<End, 2> ex, ey;
  const int nx = endpoints(x, ex), ny = endpoints(y, ey);
  double best = kInfinity;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      best = std::min(best, ex[i].d + vdist(ex[i].v, ey[j].v) + ey[j].d);
  return best;
}

TreeSegment TreeSpace::geodesic(const Point& x, const Point& y) const {
  Segment g;
  g.a = x;
  g.b = y;
  if (x.offset > 0.0 && y.offset > 0.0 && x.dir == y.dir && x.anchor == y.anchor) {
    g.same_edge = true;
    g.length = std::abs(x.offset - y.offset);
    return g;
  }
  std::array<End, 2> ex, ey;
  const int nx = endpoints(x, ex), ny = endpoints(y, ey);
  double best = kInfinity;
  int bi = 0, bj = 0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double d = ex[i].d + vdist(ex[i].v, ey[j].v) + ey[j].d;
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  g.length = best;
  g.p = ex[bi].v.materialize();
  g.q = ey[bj].v.materialize();
  g.da = ex[bi].d;
  g.db = ey[bj].d;
  g.la = bi == 0 ? x.dir : alphabet_.inverse(x.dir);
  g.lb = bj == 0 ? y.dir : alphabet_.inverse(y.dir);
  g.cpq = geometry::common_prefix(g.p, g.q);
  g.up = g.p.size() - g.cpq;
  g.dv = g.up + g.q.size() - g.cpq;
  return g;
}

TreePoint TreeSpace::eval(const Segment& g, double t) const {
  t = std::clamp(t, 0.0, g.length);
  if (g.same_edge) {
    const double s = g.b.offset > g.a.offset ? g.a.offset + t : g.a.offset - t;
    return on_edge(g.a.anchor, g.a.dir, s);
  }
  if (t < g.da) return on_edge(g.p, g.la, g.da - t);
  const double dvd = static_cast<double>(g.dv);
  if (t <= g.da + dvd) {
    const double r = t - g.da;
    std::size_t k = static_cast<std::size_t>(std::floor(r));
    double f = r - static_cast<double>(k);
    if (k >= g.dv) {
      k = g.dv;
      f = 0.0;
    }
    Word w;
    Letter next = 0;
    if (k <= g.up) {
      w.assign(g.p.begin(), g.p.end() - static_cast<std::ptrdiff_t>(k));
      if (k < g.up)
        next = alphabet_.inverse(g.p[g.p.size() - k - 1]);
      else if (k < g.dv)
        next = g.q[g.cpq];
    } else {
      w.assign(g.q.begin(), g.q.begin() + static_cast<std::ptrdiff_t>(g.cpq + (k - g.up)));
      if (k < g.dv) next = g.q[g.cpq + (k - g.up)];
    }
    if (k == g.dv || f <= kSnap) return {std::move(w), 0, 0.0};
    return on_edge(w, next, f);
  }
  return on_edge(g.q, g.lb, t - g.da - dvd);
}

double TreeSpace::project_param(const Segment& g, const Point& x) const {
  const double t = 0.5 * (distance(g.a, x) + g.length - distance(x, g.b));
  return std::clamp(t, 0.0, g.length);
}

Projection<TreePoint> TreeSpace::project(const Segment& g, const Point& x) const {
  const double t = project_param(g, x);
  return {eval(g, t), t};
}

Letter TreeSpace::letter_after(const Boundary& xi, std::size_t k, Letter prev) const {
  switch (xi.tail) {
    case TreeRay::Tail::periodic: {
      const std::size_t j = (xi.phase + (k - xi.prefix.size())) % xi.cycle.size();
      return xi.cycle[j];
    }
    case TreeRay::Tail::uniform: {
      const std::uint64_t draw = counter_draw(xi.seed, xi.key, StreamDomain::tail,
                                              xi.phase + (k - xi.prefix.size()));
      const std::size_t choices = k == 0 ? static_cast<std::size_t>(valence())
                                         : static_cast<std::size_t>(valence() - 1);
      const auto idx = static_cast<Letter>(scale_draw(draw, choices));
      if (k == 0) return idx;
      const Letter banned = alphabet_.inverse(prev);
      return idx < banned ? idx : static_cast<Letter>(idx + 1);
    }
    case TreeRay::Tail::none:
      break;
  }
  throw std::domain_error("boundary proxy has no letters beyond its prefix");
}

TreeRay TreeSpace::deepened(const Boundary& xi, std::size_t depth) const {
  if (xi.prefix.size() >= depth) return xi;
  if (!xi.extendable())
    throw std::domain_error("boundary proxy of depth " + std::to_string(xi.depth()) +
                            " cannot be deepened to " + std::to_string(depth));
  TreeRay out = xi;
  out.prefix.reserve(depth);
  std::size_t added = 0;
  while (out.prefix.size() < depth) {
    const std::size_t k = xi.prefix.size() + added;
    const Letter prev = k == 0 ? 0 : out.prefix[k - 1];
    out.prefix.push_back(letter_after(xi, k, prev));
    ++added;
  }
  out.phase = xi.phase + added;
  if (out.tail == TreeRay::Tail::periodic) out.phase %= xi.cycle.size();
  return out;
}

std::size_t TreeSpace::common_prefix(const Boundary& xi, const Word& v) const {
  std::size_t k = geometry::common_prefix(xi.prefix, v);
  if (k < xi.prefix.size() || k == v.size()) return k;
  if (!xi.extendable())
    throw std::domain_error("boundary proxy of depth " + std::to_string(xi.depth()) +
                            " is too shallow for a word of length " +
                            std::to_string(v.size()));
  Letter prev = k == 0 ? 0 : v[k - 1];
  while (k < v.size()) {
    const Letter l = letter_after(xi, k, prev);
    if (l != v[k]) break;
    prev = l;
    ++k;
  }
  return k;
}

double TreeSpace::horofunction(const Boundary& xi, const Point& z) const {
  const double base = static_cast<double>(z.anchor.size()) -
                      2.0 * static_cast<double>(common_prefix(xi, z.anchor));
  if (z.offset == 0.0) return base;
  Word up = z.anchor;
  up.push_back(z.dir);
  const double top = static_cast<double>(up.size()) -
                     2.0 * static_cast<double>(common_prefix(xi, up));
  return (1.0 - z.offset) * base + z.offset * top;
}

double TreeSpace::busemann(const Boundary& xi, const Point& base, const Point& z) const {
  return horofunction(xi, z) - horofunction(xi, base);
}

double TreeSpace::boundary_gromov_product(const Boundary& x, const Boundary& y,
                                          const Point& o) const {
  const std::size_t depth = std::max(x.depth(), y.depth());
  const TreeRay& xs = (x.extendable() && x.depth() < depth) ? deepened(x, depth) : x;
  const TreeRay& ys = (y.extendable() && y.depth() < depth) ? deepened(y, depth) : y;
  const std::size_t k = geometry::common_prefix(xs.prefix, ys.prefix);
  if (k == std::min(xs.depth(), ys.depth())) return kInfinity;
  if (o.anchor.empty() && o.offset == 0.0) return static_cast<double>(k);
  return static_cast<double>(k) + 0.5 * (horofunction(xs, o) + horofunction(ys, o));
}

TreePoint TreeSpace::approximant(const Boundary& xi, const Point&, double depth) const {
  const auto d = static_cast<std::size_t>(std::max(0.0, std::floor(depth)));
  const TreeRay& deep = xi.depth() < d ? deepened(xi, d) : xi;
  return vertex(Word(deep.prefix.begin(), deep.prefix.begin() + static_cast<std::ptrdiff_t>(d)));
}

TreeRay TreeSpace::ray(std::string_view prefix, std::string_view cycle) const {
  if (cycle.empty()) return finite_ray(alphabet_.parse(prefix));
  return periodic_ray(alphabet_.parse(prefix), alphabet_.parse(cycle));
}

TreeRay TreeSpace::periodic_ray(const Word& prefix, const Word& cycle) const {
  TreeRay r;
  r.prefix = prefix;
  r.tail = TreeRay::Tail::periodic;
  r.cycle = cycle;
  validate(r);
  return r;
}

TreeRay TreeSpace::finite_ray(const Word& prefix) const {
  TreeRay r;
  r.prefix = prefix;
  validate(r);
  return r;
}

TreeRay TreeSpace::random_ray(std::uint64_t seed, std::uint64_t key,
                              std::size_t depth) const {
  TreeRay r;
  r.tail = TreeRay::Tail::uniform;
  r.seed = seed;
  r.key = key;
  return deepened(r, depth);
}

void TreeSpace::validate(const Boundary& xi) const {
  if (!alphabet_.is_reduced(xi.prefix))
    throw std::domain_error("boundary prefix is not reduced");
  if (xi.tail == TreeRay::Tail::periodic) {
    const Word& c = xi.cycle;
    if (c.empty()) throw std::domain_error("periodic boundary tail is empty");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!alphabet_.valid(c[i])) throw std::domain_error("invalid letter in cycle");
      if (c[(i + 1) % c.size()] == alphabet_.inverse(c[i]))
        throw std::domain_error("periodic tail is not cyclically reduced");
    }
    if (!xi.prefix.empty() &&
        letter_after(xi, xi.prefix.size(), xi.prefix.back()) ==
            alphabet_.inverse(xi.prefix.back()))
      throw std::domain_error("periodic tail cancels against the prefix");
  }
}

std::string TreeSpace::format(const Boundary& xi) const {
  std::string out = xi.prefix.empty() ? "" : alphabet_.format(xi.prefix);
  if (xi.tail == TreeRay::Tail::periodic) {
    std::string c;
    for (std::size_t i = 0; i < xi.cycle.size(); ++i)
      c.push_back(alphabet_.symbol(xi.cycle[(xi.phase + i) % xi.cycle.size()]));
    out += "(" + c + ")*";
  } else if (xi.tail == TreeRay::Tail::uniform) {
    out += "...";
  }
  return out.empty() ? "e" : out;
}

std::string TreeSpace::format(const Point& x) const {
  std::string out = alphabet_.format(x.anchor);
  if (x.offset > 0.0)
    out += "+" + std::string(1, alphabet_.symbol(x.dir)) + "@" + format_double(x.offset);
  return out;
}

TreePoint TreeSpace::walk_away(const Point& start, double dist, CounterRng& rng,
                               const Segment* avoid, double u) const {
  struct Move {
    Word target;
    Letter arrive;
    double len;
    Letter along;  // for vertex starts: the letter of the first edge
  };
  std::vector<Move> moves;
  auto admissible = [&](const Point& probe) {
    return avoid == nullptr || std::abs(project_param(*avoid, probe) - u) < 1e-9;
  };
  if (start.offset == 0.0) {
    for (int l = 0; l < valence(); ++l) {
      const auto letter = static_cast<Letter>(l);
      if (!admissible(on_edge(start.anchor, letter, 0.25))) continue;
      Word t = start.anchor;
      alphabet_.append(t, letter);
      moves.push_back({std::move(t), letter, 1.0, letter});
    }
  } else {
    const double s = start.offset;
    const double e_down = std::min(0.25, s / 2), e_up = std::min(0.25, (1 - s) / 2);
    if (admissible(on_edge(start.anchor, start.dir, s - e_down)))
      moves.push_back({start.anchor, alphabet_.inverse(start.dir), s, 0});
    if (admissible(on_edge(start.anchor, start.dir, s + e_up))) {
      Word t = start.anchor;
      t.push_back(start.dir);
      moves.push_back({std::move(t), start.dir, 1.0 - s, 1});
    }
  }
  if (moves.empty() || dist <= 0.0) return start;
  const Move& m = moves[rng.index(moves.size())];
  if (dist <= m.len) {
    if (start.offset == 0.0) return on_edge(start.anchor, m.along, dist);
    const double s = m.along == 0 ? start.offset - dist : start.offset + dist;
    return on_edge(start.anchor, start.dir, s);
  }
  double remaining = dist - m.len;
  Word w = m.target;
  Letter arrive = m.arrive;
  const auto choices = static_cast<std::size_t>(valence() - 1);
  while (true) {
    const Letter banned = alphabet_.inverse(arrive);
    auto l = static_cast<Letter>(rng.index(choices));
    if (l >= banned) ++l;
    if (remaining <= 1.0) return on_edge(w, l, remaining);
    w.push_back(l);
    remaining -= 1.0;
    arrive = l;
  }
}

TreePoint TreeSpace::sample_ball(const Point& c, double r, CounterRng& rng) const {
  return walk_away(c, r * rng.uniform(), rng, nullptr, 0.0);
}

double TreeSpace::fiber_param(const Segment& g, double lo, double hi,
                              CounterRng& rng) const {
  std::vector<double> cands;
  if (lo <= 0.0 && 0.0 <= hi) cands.push_back(0.0);
  if (lo <= g.length && g.length <= hi) cands.push_back(g.length);
  if (!g.same_edge) {
    for (std::size_t k = 0; k <= g.dv; ++k) {
      const double t = g.da + static_cast<double>(k);
      if (t >= lo && t <= hi) cands.push_back(t);
    }
  }
  if (cands.empty()) return rng.uniform(lo, hi);
  return cands[rng.index(cands.size())];
}

TreePoint TreeSpace::fiber_point(const Segment& g, double u, double dist,
                                 CounterRng& rng) const {
  const Point base = eval(g, u);
  if (dist <= 0.0) return base;
  return walk_away(base, dist, rng, &g, u);
}

}  // namespace curtainlab::geometry
