#include "curtainlab/harness/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace curtainlab::harness {

using namespace geometry;
using walker::Mobius;
using walker::WalkConfig;

namespace {

WalkConfig<TreeSpace> tree_walk(std::vector<std::string> letters, std::vector<double> weights) {
  const TreeSpace t(4);
  WalkConfig<TreeSpace> c{t, {}, std::move(weights), letters, t.basepoint()};
  for (const auto& l : letters) c.generators.push_back(t.alphabet().parse(l));
  return c;
}

}  // namespace

Mobius schottky_a() { return Mobius::from(std::exp(1.5), 0, 0, std::exp(-1.5)); }

// Conjugate of A by z -> (5z + 2) / (z + 1), moving its fixed points 0 and
// infinity to 2 and 5.
Mobius schottky_b() {
  const HyperbolicPlane h;
  const double r = 1.0 / std::sqrt(3.0);
  const Mobius t = Mobius::from(5 * r, 2 * r, r, r);
  return walker::compose(h, walker::compose(h, t, schottky_a()), walker::inverse(h, t));
}

const std::vector<PresetInfo>& list_presets() {
  static const std::vector<PresetInfo> p = {
      {"f2-uniform", "tree(4)", "free group F2 = <a, b>, uniform on a, A, b, B", true, true, 1.0},
      {"tree-q3", "tree(4)", "free group F2, mu(a) = 0.4 and 0.2 on A, b, B", true, true, 1.0},
      {"fuchsian-schottky", "hyperbolic-plane",
       "Schottky pair with disjoint axes (0, inf) and (2, 5), translation length 3, uniform", true, true, 1.0},
      {"euclidean-centered", "euclidean-plane", "translations by +-e1, +-e2, uniform", false, false, 0.0},
      {"product-tree-line", "tree(4) x R",
       "(a,0), (A,0), (b,0), (B,0), (e,+1), (e,-1), uniform; no contracting element", false, false, 0.0},
      {"dirac-a", "tree(4)", "Dirac mass at a: deterministic, degenerate by design", false, true, 1.0},
  };
  return p;
}

const PresetInfo& preset_info(const std::string& name) {
  for (const auto& p : list_presets())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<std::string> expand_presets(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = list.find(',', start);
    std::string item = list.substr(start, comma == std::string::npos ? comma : comma - start);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (item == "all") {
      for (const auto& p : list_presets()) out.push_back(p.name);
    } else {
      out.push_back(preset_info(item).name);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

AnyWalk make_preset(const std::string& name, std::size_t n, std::size_t trials, std::uint64_t seed,
                    unsigned threads) {
  auto finish = [&](auto cfg) -> AnyWalk {
    cfg.n = n;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = threads;
    walker::validate(cfg);
    return cfg;
  };
  if (name == "f2-uniform")
    return finish(tree_walk({"a", "A", "b", "B"}, {0.25, 0.25, 0.25, 0.25}));
  if (name == "tree-q3") return finish(tree_walk({"a", "A", "b", "B"}, {0.4, 0.2, 0.2, 0.2}));
  if (name == "dirac-a") return finish(tree_walk({"a"}, {1.0}));
  if (name == "fuchsian-schottky") {
    const HyperbolicPlane h;
    const Mobius a = schottky_a(), b = schottky_b();
    return finish(WalkConfig<HyperbolicPlane>{h,
                                              {a, walker::inverse(h, a), b, walker::inverse(h, b)},
                                              {0.25, 0.25, 0.25, 0.25},
                                              {"a", "A", "b", "B"},
                                              h.basepoint()});
  }
  if (name == "euclidean-centered") {
    const EuclideanPlane e;
    return finish(WalkConfig<EuclideanPlane>{e,
                                             {{0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
                                             {0.25, 0.25, 0.25, 0.25},
                                             {"+e1", "-e1", "+e2", "-e2"},
                                             e.basepoint()});
  }
  if (name == "product-tree-line") {
    const TreeTimesLine p(4);
    const auto& al = p.tree().alphabet();
    std::vector<walker::TreeLineMotion> g{
        {al.parse("a"), 0}, {al.parse("A"), 0}, {al.parse("b"), 0},
        {al.parse("B"), 0}, {Word{}, 1.0},      {Word{}, -1.0}};
    return finish(WalkConfig<TreeTimesLine>{p,
                                            std::move(g),
                                            std::vector<double>(6, 1.0 / 6),
                                            {"(a,0)", "(A,0)", "(b,0)", "(B,0)", "(e,+1)", "(e,-1)"},
                                            p.basepoint()});
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace curtainlab::harness
