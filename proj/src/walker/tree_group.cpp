#include <cmath>
#include <stdexcept>

#include "curtainlab/walker/isometry.hpp"

namespace curtainlab::walker {

using geometry::TreePoint;
using geometry::TreeRay;

namespace {

bool at_identity(const TreePoint& o) { return o.anchor.empty() && o.offset == 0.0; }

}  // namespace

Word identity(const TreeSpace&) { return {}; }

Word compose(const TreeSpace& s, const Word& g, const Word& h) {
  return s.alphabet().multiply(g, h);
}

void accumulate(const TreeSpace& s, Word& g, const Word& h) { s.alphabet().append(g, h); }

Word inverse(const TreeSpace& s, const Word& g) { return s.alphabet().invert(g); }

TreePoint act(const TreeSpace& s, const Word& g, const TreePoint& x) {
  Word w = g;
  s.alphabet().append(w, x.anchor);
  if (x.offset == 0.0) return {std::move(w), 0, 0.0};
  return s.on_edge(w, x.dir, x.offset);
}

TreeRay act_boundary(const TreeSpace& s, const Word& g, const TreeRay& xi) {
  TreeRay out = (xi.extendable() && xi.depth() <= g.size()) ? s.deepened(xi, g.size() + 1) : xi;
  Word w = g;
  s.alphabet().append(w, out.prefix);
  const std::size_t cancelled = (g.size() + out.prefix.size() - w.size()) / 2;
  if (cancelled >= out.prefix.size())
    throw std::domain_error("boundary proxy too shallow to translate by a word of length " +
                            std::to_string(g.size()));
  out.prefix = std::move(w);
  return out;
}

double displacement(const TreeSpace& s, const Word& g, const TreePoint& o) {
  if (at_identity(o)) return static_cast<double>(g.size());
  return s.distance(o, act(s, g, o));
}

double orbit_busemann(const TreeSpace& s, const TreeRay& xi, const TreePoint& o,
                      const Word& g) {
  return s.busemann(xi, o, act(s, g, o));
}

double cocycle(const TreeSpace& s, const Word& g, const TreeRay& xi, const TreePoint& o) {
  if (!at_identity(o)) return orbit_busemann(s, xi, o, inverse(s, g));
  // b_xi(g^-1) = |g| - 2 cp(g^-1, xi), reading g^-1 from the end of g.
  const auto& alpha = s.alphabet();
  std::size_t k = 0;
  Letter prev = 0;
  while (k < g.size()) {
    const Letter want = alpha.inverse(g[g.size() - 1 - k]);
    Letter have;
    if (k < xi.prefix.size()) {
      have = xi.prefix[k];
    } else if (xi.extendable()) {
      have = s.letter_after(xi, k, prev);
    } else {
      throw std::domain_error("boundary proxy too shallow for cocycle evaluation");
    }
    if (have != want) break;
    prev = have;
    ++k;
  }
  return static_cast<double>(g.size()) - 2.0 * static_cast<double>(k);
}

TreeRay orbit_ray(const TreeSpace& s, const Word& g, const TreePoint& o) {
  TreePoint p = act(s, g, o);
  Word prefix = std::move(p.anchor);
  if (p.offset > 0.0) prefix.push_back(p.dir);
  return s.finite_ray(prefix);
}

void cyclic_reduction(const TreeSpace& s, const Word& g, Word& u, Word& core) {
  std::size_t i = 0, j = g.size();
  while (j > i + 1 && g[j - 1] == s.alphabet().inverse(g[i])) {
    ++i;
    --j;
  }
  u.assign(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(i));
  core.assign(g.begin() + static_cast<std::ptrdiff_t>(i), g.begin() + static_cast<std::ptrdiff_t>(j));
}

Classification classify(const TreeSpace& s, const Word& g) {
  Classification out;
  if (g.empty()) return out;
  Word u, core;
  cyclic_reduction(s, g, u, core);
  if (core.size() == 1 && s.alphabet().inverse(core[0]) == core[0]) {
    out.kind = Kind::elliptic;
    return out;
  }
  out.kind = Kind::axial;
  out.translation_length = static_cast<double>(core.size());
  out.contracting = Contracting::yes;
  return out;
}

std::optional<geometry::TreeSegment> axis_segment(const TreeSpace& s, const Word& g,
                                                  const TreePoint&, double half_length) {
  if (classify(s, g).kind != Kind::axial) return std::nullopt;
  Word u, core;
  cyclic_reduction(s, g, u, core);
  const auto reps = static_cast<std::size_t>(
      std::ceil(std::max(1.0, half_length) / static_cast<double>(core.size())));
  const Word back = s.alphabet().invert(core);
  Word left = u, right = u;
  for (std::size_t k = 0; k < reps; ++k) {
    s.alphabet().append(left, back);
    s.alphabet().append(right, core);
  }
  return s.geodesic(s.vertex(left), s.vertex(right));
}

std::string format(const TreeSpace& s, const Word& g) { return s.alphabet().format(g); }

bool same(const TreeSpace&, const Word& g, const Word& h) { return g == h; }

}  // namespace curtainlab::walker
