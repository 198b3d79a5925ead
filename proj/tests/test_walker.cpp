#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "curtainlab/walker/walk.hpp"

using namespace curtainlab;
using namespace curtainlab::geometry;
using namespace curtainlab::walker;

namespace {

WalkConfig<TreeSpace> f2_config(std::size_t n, std::size_t trials, std::uint64_t seed) {
  const TreeSpace t(4);
  const Alphabet& al = t.alphabet();
  return {t,
          {al.parse("a"), al.parse("A"), al.parse("b"), al.parse("B")},
          {0.25, 0.25, 0.25, 0.25},
          {"a", "A", "b", "B"},
          t.basepoint(),
          n,
          trials,
          seed,
          1};
}

Mobius hyp(double a, double b, double c, double d) { return Mobius::from(a, b, c, d); }

Mobius random_mobius(CounterRng& rng) {
  // Product of a few random hyperbolic elements conjugated around.
  Mobius g = hyp(1, 0, 0, 1);
  for (int k = 0; k < 3; ++k) {
    const double l = rng.uniform(-1.5, 1.5), th = rng.uniform(0, std::numbers::pi);
    const Mobius stretch = hyp(std::exp(l / 2), 0, 0, std::exp(-l / 2));
    const Mobius rot = hyp(std::cos(th), -std::sin(th), std::sin(th), std::cos(th));
    g = compose(HyperbolicPlane{}, compose(HyperbolicPlane{}, g, rot), stretch);
  }
  return g;
}

}  // namespace

TEST(Compose, Examples) {
  const TreeSpace t(4);
  const auto& al = t.alphabet();
  EXPECT_EQ(al.format(compose(t, al.parse("ab"), al.parse("Ba"))), "aa");

  const HyperbolicPlane h;
  const Mobius g = hyp(2, 1, 3, 2);
  EXPECT_TRUE(same(h, compose(h, g, inverse(h, g)), identity(h)));

  const EuclideanPlane e;
  const RigidMotion r{std::numbers::pi / 2, 1, 0};
  const RigidMotion rr = compose(e, r, r);
  EXPECT_NEAR(std::abs(rr.angle), std::numbers::pi, 1e-12);
  EXPECT_NEAR(rr.tx, 1.0, 1e-12);
  EXPECT_NEAR(rr.ty, 1.0, 1e-12);
}

TEST(Act, Examples) {
  const HyperbolicPlane h;
  const auto p = act(h, hyp(2, 0, 0, 0.5), HypPoint{0, 1});
  EXPECT_NEAR(p.x, 0.0, 1e-12);
  EXPECT_NEAR(p.y, 4.0, 1e-12);
  const TreeSpace t(4);
  EXPECT_EQ(act(t, t.alphabet().parse("a"), t.vertex("e")), t.vertex("a"));
  EXPECT_EQ(act(t, identity(t), t.vertex("ab")), t.vertex("ab"));
}

TEST(Act, PreservesDistances) {
  CounterRng rng(41, 0, StreamDomain::probe);
  const TreeSpace t(4);
  const HyperbolicPlane h;
  const EuclideanPlane e;
  const TreeTimesLine p(4);
  const auto f2 = f2_config(12, 1, 1);
  for (int i = 0; i < 1000; ++i) {
    const Word w = walk_element(f2, static_cast<std::size_t>(i), 12);
    const auto x = t.sample_ball(t.basepoint(), 5, rng), y = t.sample_ball(t.basepoint(), 5, rng);
    ASSERT_NEAR(t.distance(act(t, w, x), act(t, w, y)), t.distance(x, y), 1e-9);

    const Mobius g = random_mobius(rng);
    const auto u = h.sample_ball(h.basepoint(), 3, rng), v = h.sample_ball(h.basepoint(), 3, rng);
    ASSERT_NEAR(h.distance(act(h, g, u), act(h, g, v)), h.distance(u, v), 1e-8);

    const RigidMotion m{rng.uniform(-3, 3), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const EucPoint a{rng.uniform(-5, 5), rng.uniform(-5, 5)}, b{rng.uniform(-5, 5), 0};
    ASSERT_NEAR(e.distance(act(e, m, a), act(e, m, b)), e.distance(a, b), 1e-9);

    const TreeLineMotion pm{w, rng.uniform(-3, 3)};
    const auto q1 = p.sample_ball(p.basepoint(), 4, rng), q2 = p.sample_ball(p.basepoint(), 4, rng);
    ASSERT_NEAR(p.distance(act(p, pm, q1), act(p, pm, q2)), p.distance(q1, q2), 1e-9);
  }
}

TEST(Compose, AssociativeWithExactInverses) {
  CounterRng rng(42, 0, StreamDomain::probe);
  const HyperbolicPlane h;
  for (int i = 0; i < 500; ++i) {
    const Mobius a = random_mobius(rng), b = random_mobius(rng), c = random_mobius(rng);
    ASSERT_TRUE(same(h, compose(h, compose(h, a, b), c), compose(h, a, compose(h, b, c))));
    ASSERT_TRUE(same(h, compose(h, inverse(h, a), a), identity(h)));
  }
  const auto f2 = f2_config(8, 1, 2);
  const TreeSpace& t = f2.space;
  for (std::size_t i = 0; i < 500; ++i) {
    const Word a = walk_element(f2, 3 * i, 8), b = walk_element(f2, 3 * i + 1, 8),
               c = walk_element(f2, 3 * i + 2, 8);
    ASSERT_EQ(compose(t, compose(t, a, b), c), compose(t, a, compose(t, b, c)));
    ASSERT_TRUE(compose(t, inverse(t, a), a).empty());
  }
}

TEST(Trajectory, Examples) {
  auto cfg = f2_config(0, 1, 7);
  const auto empty = trajectory(cfg, 0);
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_TRUE(empty[0].z.empty());
  EXPECT_DOUBLE_EQ(empty[0].displacement, 0.0);

  // Replay the seeded stream by hand: one uniform per step, cumulative weights.
  cfg.n = 3;
  const auto traj = trajectory(cfg, 5);
  CounterRng rng(7, 5, StreamDomain::walk);
  Word w;
  for (int k = 0; k < 3; ++k) {
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(rng.uniform() * 4), 3);
    cfg.space.alphabet().append(w, cfg.generators[idx]);
  }
  EXPECT_EQ(traj.back().z, w);
  EXPECT_DOUBLE_EQ(traj.back().displacement, static_cast<double>(w.size()));

  const TreeSpace t(4);
  WalkConfig<TreeSpace> dirac{t, {t.alphabet().parse("a")}, {1.0}, {"a"}, t.basepoint(), 5, 1, 3, 1};
  const auto d = trajectory(dirac, 0);
  EXPECT_EQ(t.alphabet().format(d.back().z), "aaaaa");
  EXPECT_DOUBLE_EQ(d.back().displacement, 5.0);
}

TEST(Trajectory, ReproducibleAndSubadditive) {
  const auto cfg = f2_config(200, 1, 99);
  for (std::size_t trial = 0; trial < 20; ++trial) {
    const auto a = trajectory(cfg, trial), b = trajectory(cfg, trial);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      ASSERT_EQ(a[k].z, b[k].z);
      ASSERT_EQ(a[k].displacement, b[k].displacement);
    }
    for (std::size_t n = 0; n <= 200; n += 17)
      for (std::size_t m = 0; n + m <= 200; m += 23) {
        const Word incr = compose(cfg.space, inverse(cfg.space, a[n].z), a[n + m].z);
        ASSERT_LE(a[n + m].displacement,
                  a[n].displacement + displacement(cfg.space, incr, cfg.basepoint) + 1e-9);
      }
  }
}

TEST(Trajectory, HyperbolicLongWalkStaysAccurate) {
  const HyperbolicPlane h;
  const double ch = std::cosh(1.5), sh = std::sinh(1.5);
  const Mobius a = hyp(ch, sh, sh, ch);
  WalkConfig<HyperbolicPlane> cfg{h, {a, inverse(h, a)}, {0.75, 0.25}, {"a", "A"}, h.basepoint(),
                                  20000, 1, 4, 1};
  const auto z = walk_element(cfg, 0, 20000);
  const double d = displacement(h, z, h.basepoint());
  // Single-axis walk with drift: displacement is 3 |net steps|.
  double net = 0;
  CounterRng rng(4, 0, StreamDomain::walk);
  for (int k = 0; k < 20000; ++k) net += rng.uniform() < 0.75 ? 1 : -1;
  EXPECT_NEAR(d, 3.0 * std::abs(net), 1e-6 * (1 + std::abs(net)));
}

TEST(TranslationLength, Examples) {
  const TreeSpace t(4);
  const auto tl = translation_length(t, t.alphabet().parse("ab"), 50, t.basepoint());
  EXPECT_DOUBLE_EQ(*tl.exact, 2.0);
  EXPECT_DOUBLE_EQ(tl.estimate, 2.0);
  const auto conj = translation_length(t, t.alphabet().parse("bbaBB"), 200, t.basepoint());
  EXPECT_DOUBLE_EQ(*conj.exact, 1.0);
  EXPECT_LE(std::abs(conj.estimate - 1.0), 2 * 2.0 / 200 + 1e-12);

  const HyperbolicPlane h;
  const auto hl = translation_length(h, hyp(2, 0, 0, 0.5), 10, h.basepoint());
  EXPECT_NEAR(*hl.exact, 2 * std::log(2.0), 1e-12);
  EXPECT_NEAR(hl.estimate, 2 * std::log(2.0), 1e-9);

  const EuclideanPlane e;
  const auto el = translation_length(e, RigidMotion{1.0, 3, 0}, 100, e.basepoint());
  EXPECT_DOUBLE_EQ(*el.exact, 0.0);
  EXPECT_LT(el.estimate, 0.1);
}

TEST(TranslationLength, ConvergesWithinAxisBound) {
  CounterRng rng(43, 0, StreamDomain::probe);
  const HyperbolicPlane h;
  for (int i = 0; i < 100; ++i) {
    const Mobius g = random_mobius(rng);
    const auto c = classify(h, g);
    if (c.kind != Kind::axial) continue;
    const auto axis = axis_segment(h, g, h.basepoint(), 5.0);
    ASSERT_TRUE(axis.has_value());
    const double off = h.distance(h.basepoint(), h.project(*axis, h.basepoint()).foot);
    for (std::size_t n : {1u, 4u, 16u, 64u}) {
      const auto est = translation_length(h, g, n, h.basepoint());
      ASSERT_LE(std::abs(est.estimate - *est.exact), 2 * off / static_cast<double>(n) + 1e-7);
    }
  }
}

TEST(Classify, Examples) {
  CounterRng rng(44, 0, StreamDomain::probe);
  const TreeSpace t(4);
  const auto ct = classify_with_probe(t, t.alphabet().parse("ab"), t.basepoint(), rng);
  EXPECT_EQ(ct.kind, Kind::axial);
  EXPECT_EQ(ct.contracting, Contracting::yes);
  EXPECT_LE(ct.probe_diameter, 1.0 + 1e-9);

  const EuclideanPlane e;
  const auto ce = classify_with_probe(e, RigidMotion{0, 1, 0}, e.basepoint(), rng);
  EXPECT_EQ(ce.kind, Kind::axial);
  EXPECT_EQ(ce.contracting, Contracting::no);
  EXPECT_GT(ce.probe_diameter, 2.0);

  const TreeTimesLine p(4);
  const auto cp = classify_with_probe(p, TreeLineMotion{p.tree().alphabet().parse("a"), 1.0},
                                      p.basepoint(), rng);
  EXPECT_EQ(cp.kind, Kind::axial);
  EXPECT_EQ(cp.contracting, Contracting::no);
  EXPECT_GT(cp.probe_diameter, 2.0);
  EXPECT_EQ(classify(p, TreeLineMotion{{}, 2.0}).contracting, Contracting::no);
  EXPECT_EQ(classify(p, TreeLineMotion{{}, 2.0}).kind, Kind::axial);

  const HyperbolicPlane h;
  EXPECT_EQ(classify(h, hyp(2, 0, 0, 0.5)).contracting, Contracting::yes);
  EXPECT_EQ(classify(h, hyp(1, 1, 0, 1)).kind, Kind::parabolic);
  EXPECT_EQ(classify(h, hyp(0, -1, 1, 0)).kind, Kind::elliptic);
  EXPECT_EQ(classify(h, identity(h)).kind, Kind::identity);
  EXPECT_EQ(classify(e, RigidMotion{1.0, 2, 0}).kind, Kind::elliptic);

  const TreeSpace odd(5);
  EXPECT_EQ(classify(odd, odd.alphabet().parse("asA")).kind, Kind::elliptic);
  EXPECT_EQ(classify(odd, odd.alphabet().parse("as")).kind, Kind::axial);
}

TEST(Classify, InvariantsAndConjugationInvariance) {
  CounterRng rng(45, 0, StreamDomain::probe);
  const HyperbolicPlane h;
  for (int i = 0; i < 500; ++i) {
    const Mobius g = random_mobius(rng), k = random_mobius(rng);
    const auto c = classify(h, g);
    const auto cc = classify(h, compose(h, compose(h, k, g), inverse(h, k)));
    ASSERT_EQ(c.kind, cc.kind);
    ASSERT_NEAR(c.translation_length, cc.translation_length, 1e-9);
    ASSERT_TRUE(c.kind != Kind::axial || c.translation_length > 0.0);
    ASSERT_TRUE(c.contracting != Contracting::yes || c.kind == Kind::axial);
  }
  const auto f2 = f2_config(10, 1, 5);
  const TreeSpace& t = f2.space;
  for (std::size_t i = 0; i < 500; ++i) {
    const Word g = walk_element(f2, 2 * i, 10), k = walk_element(f2, 2 * i + 1, 6);
    const auto c = classify(t, g);
    const auto cc = classify(t, compose(t, compose(t, k, g), inverse(t, k)));
    ASSERT_EQ(c.kind, cc.kind);
    ASSERT_DOUBLE_EQ(c.translation_length, cc.translation_length);
    ASSERT_EQ(c.kind == Kind::axial, c.contracting == Contracting::yes);
  }
}

TEST(Classify, ProbeIsEvidenceOnly) {
  CounterRng rng(46, 0, StreamDomain::probe);
  const HyperbolicPlane h;
  const auto c = classify_with_probe(h, hyp(2, 0, 0, 0.5), h.basepoint(), rng);
  EXPECT_EQ(c.contracting, Contracting::yes);
  EXPECT_EQ(c.probe_balls, 50);
  // Balls at distance >= 2 from a hyperbolic geodesic project to short arcs.
  EXPECT_LT(c.probe_diameter, 2.0);
}

TEST(ContractingFraction, F2MatchesMarkovOracle) {
  // |Z_n| is a birth-death chain: 0 -> 1 surely, k -> k+1 w.p. 3/4, k-1 w.p. 1/4.
  // In a free group every nontrivial element is axial and contracting.
  std::vector<double> p(52, 0.0);
  p[0] = 1.0;
  for (int step = 0; step < 50; ++step) {
    std::vector<double> q(52, 0.0);
    q[1] += p[0];
    for (int k = 1; k < 51; ++k) {
      q[k + 1] += 0.75 * p[k];
      q[k - 1] += 0.25 * p[k];
    }
    p = q;
  }
  const double oracle = 1.0 - p[0];
  EXPECT_GE(oracle, 0.9);
  const auto frac = contracting_fraction(f2_config(50, 500, 8), {50});
  ASSERT_EQ(frac.size(), 1u);
  EXPECT_NEAR(frac[0].fraction, oracle, 3 * std::sqrt(oracle * (1 - oracle) / 500) + 1e-3);
}

TEST(ContractingFraction, DegenerateConfigs) {
  const EuclideanPlane e;
  WalkConfig<EuclideanPlane> trans{e,
                                   {RigidMotion{0, 1, 0}, RigidMotion{0, -1, 0},
                                    RigidMotion{0, 0, 1}, RigidMotion{0, 0, -1}},
                                   {0.25, 0.25, 0.25, 0.25},
                                   {"x", "X", "y", "Y"},
                                   e.basepoint(),
                                   0,
                                   100,
                                   1,
                                   1};
  for (const auto& f : contracting_fraction(trans, {10, 50}))
    EXPECT_DOUBLE_EQ(f.fraction, 0.0);

  const TreeSpace t(4);
  WalkConfig<TreeSpace> dirac{t, {t.alphabet().parse("a")}, {1.0}, {"a"}, t.basepoint(), 0, 50, 1, 2};
  for (const auto& f : contracting_fraction(dirac, {1, 5, 40})) EXPECT_DOUBLE_EQ(f.fraction, 1.0);
}

TEST(WalkConfig, Validation) {
  auto cfg = f2_config(10, 1, 1);
  EXPECT_NO_THROW(validate(cfg));
  cfg.weights = {0.5, 0.5, 0.5, -0.5};
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg.weights = {0.3, 0.3, 0.3, 0.3};
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  const TreeSpace odd(3);
  WalkConfig<TreeSpace> tiny{odd, {odd.alphabet().parse("s")}, {1.0}, {"s"}, odd.basepoint(), 1, 1, 1, 1};
  EXPECT_THROW(validate(tiny), std::invalid_argument);
}

TEST(Digest, StableAcrossCalls) {
  const TreeSpace t(4);
  EXPECT_EQ(digest(t, t.alphabet().parse("ab")), digest(t, t.alphabet().parse("ab")));
  EXPECT_NE(digest(t, t.alphabet().parse("ab")), digest(t, t.alphabet().parse("ba")));
  EXPECT_EQ(digest_text("").size(), 16u);
}

TEST(Walk, IncrementsReplayTheStream) {
  const auto cfg = f2_config(50, 1, 44);
  const auto inc = walk_increments(cfg, 3, 50);
  Word z = identity(cfg.space);
  for (std::size_t i : inc) accumulate(cfg.space, z, cfg.generators[i]);
  EXPECT_EQ(z, walk_element(cfg, 3, 50));
}
