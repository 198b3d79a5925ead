#include <gtest/gtest.h>

#include <cmath>

#include "curtainlab/curtains/curtains.hpp"
#include "curtainlab/geometry/geometry.hpp"

using namespace curtainlab;
using namespace curtainlab::geometry;
using namespace curtainlab::curtains;

namespace {

template <class S>
typename S::Point random_point(const S& s, CounterRng& rng, double radius) {
  return s.sample_ball(s.basepoint(), radius, rng);
}

template <class S>
Curtain<S> random_curtain(const S& s, CounterRng& rng, double radius = 5.0) {
  for (;;) {
    const auto x = random_point(s, rng, radius), y = random_point(s, rng, radius);
    const double d = s.distance(x, y);
    if (d < 1.5) continue;
    return dual_curtain(s, x, y, rng.uniform(0.5, d - 0.5));
  }
}

// A witness must be a chain of L+1 curtains, each containing its recorded
// points of h1 and h2.
template <class S>
void expect_valid_witness(const S& s, const SeparationReport<S>& rep, const Curtain<S>& h1,
                          const Curtain<S>& h2) {
  ASSERT_EQ(rep.verdict, Verdict::falsified);
  ASSERT_TRUE(rep.witness.has_value());
  const auto& w = *rep.witness;
  ASSERT_EQ(w.size(), static_cast<std::size_t>(rep.L) + 1);
  CounterRng rng(1, 0, StreamDomain::audit);
  EXPECT_NO_THROW(is_chain(s, w.curtains, w.ref, rng));
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_EQ(side_of(s, w.curtains[i], rep.meets_first[i]), Side::pole);
    EXPECT_EQ(side_of(s, h1, rep.meets_first[i]), Side::pole);
    EXPECT_EQ(side_of(s, w.curtains[i], rep.meets_second[i]), Side::pole);
    EXPECT_EQ(side_of(s, h2, rep.meets_second[i]), Side::pole);
  }
}

}  // namespace

// ---- Curtains and halfspaces ----

TEST(DualCurtain, Examples) {
  const TreeSpace t(4);
  const auto ht = dual_curtain(t, t.vertex("e"), t.vertex("aa"), 1.0);
  EXPECT_EQ(pole_point(t, ht, 1.0), t.vertex("a"));
  EXPECT_EQ(side_of(t, ht, t.vertex("a")), Side::pole);
  EXPECT_EQ(side_of(t, ht, t.vertex("ab")), Side::pole);
  EXPECT_EQ(side_of(t, ht, t.vertex("b")), Side::minus);
  EXPECT_EQ(side_of(t, ht, t.vertex("aab")), Side::plus);

  const EuclideanPlane e;
  const auto slab = dual_curtain(e, {0, 0}, {10, 0}, 5.0);
  EXPECT_EQ(side_of(e, slab, {7, 3}), Side::plus);
  EXPECT_EQ(side_of(e, slab, {4.5, -100}), Side::pole);
  EXPECT_EQ(side_of(e, slab, {5.5, 100}), Side::pole);
  EXPECT_EQ(side_of(e, slab, {4.49, 0}), Side::minus);

  // Projection onto the imaginary axis sends z to i|z|.
  const HyperbolicPlane h;
  const auto ann = dual_curtain(h, {0, 1}, {0, std::exp(4.0)}, 2.0);
  CounterRng rng(2, 0, StreamDomain::probe);
  for (int i = 0; i < 2000; ++i) {
    const HypPoint z{rng.uniform(-30, 30), rng.uniform(0.01, 30)};
    const double r = std::abs(z.z());
    if (std::abs(std::log(r) - 1.5) < 1e-9 || std::abs(std::log(r) - 2.5) < 1e-9) continue;
    const Side want = r < std::exp(1.5) ? Side::minus : r > std::exp(2.5) ? Side::plus : Side::pole;
    ASSERT_EQ(side_of(h, ann, z), want) << h.format(z);
  }
}

TEST(DualCurtain, PoleMustFit) {
  const EuclideanPlane e;
  EXPECT_THROW(dual_curtain(e, {0, 0}, {10, 0}, 0.3), std::domain_error);
  EXPECT_THROW(dual_curtain(e, {0, 0}, {10, 0}, 9.7), std::domain_error);
  EXPECT_NO_THROW(dual_curtain(e, {0, 0}, {10, 0}, 0.5));
}

TEST(Separates, Examples) {
  const EuclideanPlane e;
  const auto h = dual_curtain(e, {0, 0}, {3, 0}, 1.5);
  EXPECT_TRUE(separates(e, h, {{0, 0}}, {{3, 0}}));
  EXPECT_FALSE(separates(e, h, {{0, 0}}, {{0, 0}}));
  const auto slab = dual_curtain(e, {0, 0}, {10, 0}, 5.0);
  EXPECT_TRUE(separates(e, slab, {{0, 9}}, {{9, -9}}));
  EXPECT_THROW(separates(e, slab, {{5, 9}}, {{9, -9}}), Indeterminate);
}

TEST(Reversed, SwapsHalfspaces) {
  const TreeSpace t(4);
  CounterRng rng(3, 0, StreamDomain::probe);
  for (int i = 0; i < 200; ++i) {
    const auto h = random_curtain(t, rng);
    const auto r = reversed(t, h);
    const auto p = random_point(t, rng, 7.0);
    const Side a = side_of(t, h, p), b = side_of(t, r, p);
    ASSERT_EQ(a == Side::minus, b == Side::plus);
    ASSERT_EQ(a == Side::pole, b == Side::pole);
  }
}

// ---- Chains ----

TEST(IsChain, Examples) {
  CounterRng rng(4, 0, StreamDomain::audit);
  const TreeSpace t(4);
  const auto x = t.vertex("e"), y = t.vertex("aaaa");
  const auto c = is_chain(t, {dual_curtain(t, x, y, 1.0), dual_curtain(t, x, y, 2.1),
                              dual_curtain(t, x, y, 3.2)},
                          x, rng);
  EXPECT_EQ(c.size(), 3u);
  // Closed poles at unit spacing touch, so they do not form a chain.
  EXPECT_THROW(is_chain(t, {dual_curtain(t, x, y, 1.0), dual_curtain(t, x, y, 2.0)}, x, rng),
               ChainViolation);

  const EuclideanPlane e;
  const auto vx = dual_curtain(e, {-10, 0}, {10, 0}, 10.0);
  const auto vy = dual_curtain(e, {0, -10}, {0, 10}, 10.0);
  try {
    is_chain(e, {vx, vy}, {-9, -9}, rng);
    ADD_FAILURE() << "crossing slabs accepted";
  } catch (const ChainViolation& err) {
    EXPECT_LE(err.index, 1u);
  }
  EXPECT_EQ(is_chain(e, {vx}, {-9, -9}, rng).size(), 1u);
}

TEST(IsChain, OrientsTowardReference) {
  CounterRng rng(5, 0, StreamDomain::audit);
  const EuclideanPlane e;
  const auto a = dual_curtain(e, {0, 0}, {10, 0}, 2.0);
  const auto b = dual_curtain(e, {10, 0}, {0, 0}, 4.0);  // x = 6 slab, reversed
  const auto c = is_chain(e, {a, b}, {0, 3}, rng);
  EXPECT_EQ(side_of(e, c.curtains[1], {0, 3}), Side::minus);
  EXPECT_EQ(side_of(e, c.curtains[1], {9, 3}), Side::plus);
  // Parallel slabs on different dual lines use the sampled certificate.
  const auto d = dual_curtain(e, {0, 5}, {10, 5}, 8.0);
  EXPECT_EQ(is_chain(e, {a, b, d}, {0, 3}, rng).size(), 3u);
}

TEST(DInf, Examples) {
  CounterRng rng(6, 0, StreamDomain::audit);
  const EuclideanPlane e;
  const auto r = d_inf(e, {0, 0}, {2.3, 0});
  EXPECT_EQ(r.value, 3);
  EXPECT_EQ(r.chain.size(), 2u);
  EXPECT_NO_THROW(is_chain(e, r.chain.curtains, r.chain.ref, rng));
  const auto one = d_inf(e, {0, 0}, {1, 0});
  EXPECT_EQ(one.value, 1);
  EXPECT_TRUE(one.chain.empty());

  // Brute force: every curtain separates e from "aaa" and they nest.
  const TreeSpace t(4);
  const auto x = t.vertex("e"), y = t.vertex("aaa");
  const auto rt = d_inf(t, x, y);
  EXPECT_EQ(rt.value, 3);
  ASSERT_EQ(rt.chain.size(), 2u);
  for (const auto& h : rt.chain.curtains) EXPECT_TRUE(separates(t, h, {x}, {y}));
  EXPECT_EQ(side_of(t, rt.chain.curtains[1], t.vertex("a")), Side::minus);
  EXPECT_EQ(side_of(t, rt.chain.curtains[0], t.vertex("aa")), Side::plus);
}

TEST(DInf, ChainsAreValidEverywhere) {
  CounterRng rng(7, 0, StreamDomain::audit);
  const HyperbolicPlane h;
  for (int i = 0; i < 100; ++i) {
    const auto x = random_point(h, rng, 4.0), y = random_point(h, rng, 4.0);
    const auto r = d_inf(h, x, y);
    ASSERT_EQ(r.value, static_cast<int>(std::ceil(h.distance(x, y))));
    if (r.chain.empty()) continue;
    const auto c = is_chain(h, r.chain.curtains, x, rng);
    for (const auto& cu : c.curtains) ASSERT_TRUE(separates(h, cu, {x}, {y}));
  }
}

// ---- L-separation ----

TEST(LSeparated, EuclideanParallelSlabsAreFalsified) {
  const EuclideanPlane e;
  const auto h1 = dual_curtain(e, {0, 0}, {20, 0}, 5.0);
  const auto h2 = dual_curtain(e, {0, 0}, {20, 0}, 10.0);
  Budget b;
  b.seed = 1;
  const auto rep = l_separated(e, h1, h2, 10, b);
  expect_valid_witness(e, rep, h1, h2);
}

TEST(LSeparated, TreeCurtainsOnOneGeodesicAreCertified) {
  const TreeSpace t(4);
  const auto x = t.vertex("e"), y = t.vertex("aaaaaa");
  const auto h1 = dual_curtain(t, x, y, 1.0), h2 = dual_curtain(t, x, y, 5.0);
  Budget b;
  b.seed = 2;
  b.candidates = 60;
  const auto rep = l_separated(t, h1, h2, 1, b);
  EXPECT_EQ(rep.verdict, Verdict::certified_up_to_budget);
  EXPECT_EQ(rep.candidates_tried, 60);
}

TEST(LSeparated, RejectsIntersectingCurtains) {
  const TreeSpace t(4);
  const auto h = dual_curtain(t, t.vertex("e"), t.vertex("aaa"), 1.5);
  EXPECT_THROW(l_separated(t, h, h, 1, Budget{}), std::domain_error);
  const EuclideanPlane e;
  const auto vx = dual_curtain(e, {-10, 0}, {10, 0}, 10.0);
  const auto vy = dual_curtain(e, {0, -10}, {0, 10}, 10.0);
  EXPECT_THROW(l_separated(e, vx, vy, 1, Budget{}), std::domain_error);
}

TEST(LSeparated, FalsifiedWitnessesRevalidate) {
  CounterRng rng(8, 0, StreamDomain::probe);
  const HyperbolicPlane h;
  const EuclideanPlane e;
  int falsified = 0;
  for (int i = 0; i < 30; ++i) {
    const auto x = random_point(h, rng, 4.0), y = random_point(h, rng, 4.0);
    const double d = h.distance(x, y);
    if (d < 3.2) continue;
    const auto h1 = dual_curtain(h, x, y, 0.6), h2 = dual_curtain(h, x, y, 1.7);
    Budget b;
    b.seed = static_cast<std::uint64_t>(i);
    b.candidates = 60;
    const auto rep = l_separated(h, h1, h2, 1, b);
    if (rep.verdict == Verdict::falsified) {
      ++falsified;
      expect_valid_witness(h, rep, h1, h2);
    }
  }
  for (int i = 0; i < 20; ++i) {
    const auto x = random_point(e, rng, 5.0), y = random_point(e, rng, 5.0);
    if (e.distance(x, y) < 3.0) continue;
    const auto h1 = dual_curtain(e, x, y, 0.6), h2 = dual_curtain(e, x, y, 1.7);
    Budget b;
    b.seed = 100 + static_cast<std::uint64_t>(i);
    const auto rep = l_separated(e, h1, h2, 2, b);
    expect_valid_witness(e, rep, h1, h2);
    ++falsified;
  }
  EXPECT_GT(falsified, 0);
}

// ---- Greedy chains and d_L ----

TEST(GreedyChain, TreeLongGeodesic) {
  const TreeSpace t(4);
  const auto x = t.vertex("e"), y = t.vertex("aaaaaaaaaaaa");
  Budget b;
  b.seed = 3;
  b.candidates = 40;
  const auto c = greedy_dual_L_chain(t, x, y, 1, b);
  EXPECT_GE(c.size(), 2u);
  EXPECT_LE(c.size(), 11u);
  CounterRng rng(9, 0, StreamDomain::audit);
  EXPECT_NO_THROW(is_chain(t, c.curtains, x, rng));
  for (std::size_t i = 1; i < c.size(); ++i)
    EXPECT_EQ(l_separated(t, c.curtains[i - 1], c.curtains[i], 1, b).verdict,
              Verdict::certified_up_to_budget);
}

TEST(GreedyChain, EuclideanAdmitsNoTwoChain) {
  const EuclideanPlane e;
  CounterRng rng(10, 0, StreamDomain::probe);
  for (int i = 0; i < 10; ++i) {
    const auto x = random_point(e, rng, 6.0), y = random_point(e, rng, 6.0);
    Budget b;
    b.seed = static_cast<std::uint64_t>(i);
    EXPECT_LE(greedy_dual_L_chain(e, x, y, 5, b).size(), 1u);
  }
}

// Every disjoint pair in tree x line is met by chains dual to geodesics along
// one factor, so no pair is L-separated.
TEST(LSeparated, TreeTimesLinePairsAreFalsified) {
  const TreeTimesLine s(4);
  CounterRng rng(15, 0, StreamDomain::probe);
  int tried = 0;
  for (int i = 0; i < 40; ++i) {
    const auto x = random_point(s, rng, 8.0), y = random_point(s, rng, 8.0);
    const double d = s.distance(x, y);
    if (d < 8.0) continue;
    const double t1 = rng.uniform(0.5, d - 4.0), t2 = t1 + rng.uniform(1.05, 3.0);
    const auto h1 = dual_curtain(s, x, y, t1), h2 = dual_curtain(s, x, y, t2);
    Budget b;
    b.seed = static_cast<std::uint64_t>(i);
    for (int L : {1, 3}) {
      const auto rep = l_separated(s, h1, h2, L, b);
      expect_valid_witness(s, rep, h1, h2);
    }
    ++tried;
  }
  EXPECT_GT(tried, 10);
}

TEST(GreedyChain, TreeTimesLineAdmitsNoTwoChain) {
  const TreeTimesLine s(4);
  CounterRng rng(16, 0, StreamDomain::probe);
  for (int i = 0; i < 10; ++i) {
    const auto x = random_point(s, rng, 6.0), y = random_point(s, rng, 6.0);
    Budget b;
    b.seed = static_cast<std::uint64_t>(i);
    EXPECT_LE(greedy_dual_L_chain(s, x, y, 2, b).size(), 1u);
  }
}

TEST(GreedyChain, ShortSegmentsGiveEmptyChain) {
  const TreeSpace t(4);
  EXPECT_TRUE(greedy_dual_L_chain(t, t.vertex("e"), t.vertex("a"), 1, Budget{}).empty());
  EXPECT_EQ(d_L_lower(t, t.vertex("e"), t.vertex("a"), 1, Budget{}), 1);
  EXPECT_EQ(d_L_lower(t, t.vertex("e"), t.vertex("e"), 1, Budget{}), 0);
}

template <class S>
void check_dl_bounds(const S& s, double radius, int pairs, bool flat) {
  CounterRng rng(11, 0, StreamDomain::probe);
  for (int i = 0; i < pairs; ++i) {
    const auto x = random_point(s, rng, radius), y = random_point(s, rng, radius);
    if (s.distance(x, y) == 0.0) continue;
    Budget b;
    b.seed = static_cast<std::uint64_t>(i);
    b.candidates = 40;
    const int d1 = d_L_lower(s, x, y, 1, b), d3 = d_L_lower(s, x, y, 3, b);
    const int upper = d_inf(s, x, y).value;
    ASSERT_LE(d1, upper);
    ASSERT_LE(d3, upper);
    ASSERT_LE(d1, d3) << "larger L accepts more curtains";
    ASSERT_TRUE(!flat || d3 <= 2) << d3;
  }
}

TEST(DLLower, BoundedByDInfAndMonotoneInL) {
  check_dl_bounds(TreeSpace(4), 4.0, 30, false);
  check_dl_bounds(HyperbolicPlane{}, 3.0, 30, false);
  check_dl_bounds(EuclideanPlane{}, 4.0, 30, true);
  check_dl_bounds(TreeTimesLine(4), 3.0, 15, true);
}

// ---- Audits ----

template <class S>
void run_curtain_audits(const S& s, int configs) {
  CounterRng rng(12, 0, StreamDomain::audit);
  AuditResult part, thick, star;
  for (int i = 0; i < configs; ++i) {
    const auto h = random_curtain(s, rng);
    std::vector<typename S::Point> pts;
    for (int k = 0; k < 20; ++k) pts.push_back(random_point(s, rng, 7.0));
    part.merge(partition_audit(s, h, pts));
    thick.merge(thickness_audit(s, h, 6, rng));
    star.merge(star_convexity_audit(s, h, sample_curtain(s, h, 8, 5.0, rng)));
  }
  EXPECT_EQ(part.violations, 0u) << part.witness;
  EXPECT_EQ(thick.violations, 0u) << thick.witness;
  EXPECT_EQ(star.violations, 0u) << star.witness;
  EXPECT_GT(part.checked, 0u);
  EXPECT_GT(thick.checked, 0u);
  EXPECT_GT(star.checked, 0u);
}

TEST(Audits, PartitionThicknessStarConvexity) {
  run_curtain_audits(TreeSpace(4), 200);
  run_curtain_audits(HyperbolicPlane{}, 200);
  run_curtain_audits(EuclideanPlane{}, 200);
  run_curtain_audits(TreeTimesLine(4), 200);
}

TEST(Audits, BottleneckTree) {
  const TreeSpace t(4);
  const auto x1 = t.vertex("e"), y1 = t.vertex("aaaaaaaa");
  Budget b;
  b.seed = 4;
  b.candidates = 40;
  auto chain = greedy_dual_L_chain(t, x1, y1, 1, b);
  ASSERT_GE(chain.size(), 3u);
  chain.curtains.resize(3);
  // Paths entering and leaving through side branches.
  const auto x2 = t.vertex("Bbbb"), y2 = t.vertex("aaaaaaaabb");
  const auto r = bottleneck_audit(t, chain, x2, y2, 1);
  EXPECT_LE(r.excess, 0.0);
  EXPECT_GT(r.samples_in_pole, 0u);
  const auto trivial = bottleneck_audit(t, chain, x1, y1, 1);
  EXPECT_DOUBLE_EQ(trivial.excess, -3.0);
  EXPECT_THROW(bottleneck_audit(t, chain, y1, x1, 1), std::domain_error);
}

TEST(Audits, BottleneckHyperbolicMonteCarlo) {
  const HyperbolicPlane h;
  CounterRng rng(13, 0, StreamDomain::audit);
  int configs = 0;
  // Curtains of the hyperbolic plane are never 1-separated within budget;
  // L = 2 chains exist at spacing about 3.
  for (int i = 0; i < 40 && configs < 20; ++i) {
    const auto x1 = random_point(h, rng, 2.0), y1 = random_point(h, rng, 12.0);
    if (h.distance(x1, y1) < 10.0) continue;
    Budget b;
    b.seed = static_cast<std::uint64_t>(i);
    b.candidates = 40;
    auto chain = greedy_dual_L_chain(h, x1, y1, 2, b);
    if (chain.size() < 3) continue;
    chain.curtains.resize(3);
    const auto& c = chain.curtains;
    const auto x2 = sample_halfspace(h, c[0], false, 1, 0.5, 6.0, rng);
    const auto y2 = sample_halfspace(h, c[2], true, 1, 2.0, 6.0, rng);
    if (x2.empty() || y2.empty()) continue;
    ++configs;
    EXPECT_LE(bottleneck_audit(h, chain, x2[0], y2[0], 2).excess, 0.0);
  }
  EXPECT_GT(configs, 5);
}

TEST(Audits, FourPoint) {
  const TreeSpace t(4);
  const auto x = t.vertex("ab");
  Budget b;
  b.candidates = 20;
  EXPECT_DOUBLE_EQ(four_point_audit(t, 1, {{x, x, x, t.basepoint()}}, b), 0.0);
  CounterRng rng(14, 0, StreamDomain::probe);
  std::vector<std::array<TreePoint, 4>> quads;
  for (int i = 0; i < 10; ++i)
    quads.push_back({random_point(t, rng, 4.0), random_point(t, rng, 4.0),
                     random_point(t, rng, 4.0), random_point(t, rng, 4.0)});
  EXPECT_LE(four_point_audit(t, 1, quads, b), 4.0);
  const EuclideanPlane e;
  std::vector<std::array<EucPoint, 4>> flat;
  for (int i = 0; i < 5; ++i)
    flat.push_back({random_point(e, rng, 4.0), random_point(e, rng, 4.0),
                    random_point(e, rng, 4.0), random_point(e, rng, 4.0)});
  EXPECT_LE(four_point_audit(e, 1, flat, b), 2.0);
}
