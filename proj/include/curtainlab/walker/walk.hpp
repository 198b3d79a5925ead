#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curtainlab/parallel.hpp"
#include "curtainlab/rng.hpp"
#include "curtainlab/walker/isometry.hpp"

namespace curtainlab::walker {

/// A finitely supported measure mu on the isometry group together with the
/// run parameters of a random walk Z_n = w_1 ... w_n.
template <class S>
struct WalkConfig {
  S space;
  std::vector<Element<S>> generators;
  std::vector<double> weights;
  std::vector<std::string> labels;
  typename S::Point basepoint{};
  std::size_t n = 0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Inverse-CDF sampler over the generator weights; one uniform draw per step.
class Sampler {
 public:
  explicit Sampler(const std::vector<double>& weights) {
    double acc = 0.0;
    for (double w : weights) {
      acc += w;
      cumulative_.push_back(acc);
    }
    for (double& c : cumulative_) c /= acc;
  }
  std::size_t draw(CounterRng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

inline constexpr std::size_t kAdmissibleMin = 4;

/// Distinct elements among words of length <= max_len over supp(mu) and its
/// inverses.
template <class S>
std::size_t distinct_elements(const WalkConfig<S>& cfg, std::size_t max_len = 3) {
  const S& s = cfg.space;
  std::vector<Element<S>> letters;
  for (const auto& g : cfg.generators) {
    letters.push_back(g);
    letters.push_back(inverse(s, g));
  }
  std::vector<Element<S>> seen{identity(s)};
  std::vector<Element<S>> frontier{identity(s)};
  for (std::size_t len = 0; len < max_len; ++len) {
    std::vector<Element<S>> next;
    for (const auto& w : frontier)
      for (const auto& l : letters) {
        Element<S> e = compose(s, w, l);
        bool known = false;
        for (const auto& x : seen)
          if (same(s, x, e)) {
            known = true;
            break;
          }
        if (!known) {
          seen.push_back(e);
          next.push_back(std::move(e));
        }
      }
    frontier = std::move(next);
  }
  return seen.size();
}

template <class S>
void validate(const WalkConfig<S>& cfg) {
  if (cfg.generators.empty()) throw std::invalid_argument("walk config: no generators");
  if (cfg.generators.size() != cfg.weights.size())
    throw std::invalid_argument("walk config: generators and weights differ in length");
  double total = 0.0;
  for (double w : cfg.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("walk config: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("walk config: weights must sum to 1");
  if (cfg.trials == 0) throw std::invalid_argument("walk config: trials must be positive");
  cfg.space.validate(cfg.basepoint);
  if (distinct_elements(cfg) < kAdmissibleMin)
    throw std::invalid_argument("walk config: support generates too few elements");
}

/// Runs one trajectory and calls visit(k, Z_k) for k = 0..steps. Reversed
/// walks use the increments w_k^-1 (the reflected measure).
template <class S, class F>
void walk(const WalkConfig<S>& cfg, std::size_t trial, std::size_t steps, F&& visit,
          StreamDomain domain = StreamDomain::walk, bool reversed = false) {
  const S& s = cfg.space;
  std::vector<Element<S>> gens = cfg.generators;
  if (reversed)
    for (auto& g : gens) g = inverse(s, g);
  const Sampler sampler(cfg.weights);
  CounterRng rng(cfg.seed, trial, domain);
  Element<S> z = identity(s);
  visit(std::size_t{0}, static_cast<const Element<S>&>(z));
  for (std::size_t k = 1; k <= steps; ++k) {
    accumulate(s, z, gens[sampler.draw(rng)]);
    visit(k, static_cast<const Element<S>&>(z));
  }
}

/// Generator indices drawn by walk() on the same stream.
template <class S>
std::vector<std::size_t> walk_increments(const WalkConfig<S>& cfg, std::size_t trial,
                                         std::size_t steps,
                                         StreamDomain domain = StreamDomain::walk) {
  const Sampler sampler(cfg.weights);
  CounterRng rng(cfg.seed, trial, domain);
  std::vector<std::size_t> out(steps);
  for (auto& i : out) i = sampler.draw(rng);
  return out;
}

template <class S>
Element<S> walk_element(const WalkConfig<S>& cfg, std::size_t trial, std::size_t steps,
                        StreamDomain domain = StreamDomain::walk, bool reversed = false) {
  Element<S> out = identity(cfg.space);
  walk(cfg, trial, steps,
       [&](std::size_t k, const Element<S>& z) {
         if (k == steps) out = z;
       },
       domain, reversed);
  return out;
}

template <class S>
struct Step {
  std::size_t k;
  Element<S> z;
  double displacement;
};

/// (Z_k, d(Z_k o, o)) for k = 0..n.
template <class S>
std::vector<Step<S>> trajectory(const WalkConfig<S>& cfg, std::size_t trial) {
  std::vector<Step<S>> out;
  out.reserve(cfg.n + 1);
  walk(cfg, trial, cfg.n, [&](std::size_t k, const Element<S>& z) {
    out.push_back({k, z, displacement(cfg.space, z, cfg.basepoint)});
  });
  return out;
}

struct TranslationEstimate {
  double estimate = 0.0;
  std::optional<double> exact;
};

/// d(g^N o, o) / N together with the exact translation length.
template <class S>
TranslationEstimate translation_length(const S& s, const Element<S>& g, std::size_t iterations,
                                       const typename S::Point& o) {
  if (iterations == 0) throw std::invalid_argument("translation_length: N must be >= 1");
  Element<S> power = identity(s);
  for (std::size_t k = 0; k < iterations; ++k) accumulate(s, power, g);
  TranslationEstimate out;
  out.estimate = displacement(s, power, o) / static_cast<double>(iterations);
  out.exact = classify(s, g).translation_length;
  return out;
}

/// Exact classification plus the empirical contraction probe: the largest
/// projection diameter onto a long axis segment among `balls` random balls
/// disjoint from the axis.
template <class S>
Classification classify_with_probe(const S& s, const Element<S>& g,
                                   const typename S::Point& o, CounterRng& rng,
                                   int balls = 50, double max_offset = 8.0) {
  Classification out = classify(s, g);
  const auto axis = axis_segment(s, g, o, 20.0);
  if (!axis) return out;
  double worst = 0.0;
  for (int b = 0; b < balls; ++b) {
    const double tau = s.fiber_param(*axis, 0.25 * axis->length, 0.75 * axis->length, rng);
    const double offset = rng.uniform(2.0, max_offset);
    const auto center = s.fiber_point(*axis, tau, offset, rng);
    const double radius = 0.75 * offset;
    double lo = s.project_param(*axis, center), hi = lo;
    for (int k = 0; k < 16; ++k) {
      const double t = s.project_param(*axis, s.sample_ball(center, radius, rng));
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    worst = std::max(worst, hi - lo);
  }
  out.probe_diameter = worst;
  out.probe_balls = balls;
  return out;
}

struct FractionPoint {
  std::size_t n = 0;
  double fraction = 0.0;
  double standard_error = 0.0;
};

/// Fraction of trials whose Z_n is a contracting isometry, for each n in grid.
template <class S>
std::vector<FractionPoint> contracting_fraction(const WalkConfig<S>& cfg,
                                                std::vector<std::size_t> grid) {
  std::sort(grid.begin(), grid.end());
  const std::size_t nmax = grid.empty() ? 0 : grid.back();
  std::vector<std::vector<char>> hits(cfg.trials, std::vector<char>(grid.size(), 0));
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t trial) {
    std::size_t gi = 0;
    walk(cfg, trial, nmax, [&](std::size_t k, const Element<S>& z) {
      while (gi < grid.size() && grid[gi] == k) {
        hits[trial][gi] = classify(cfg.space, z).contracting == Contracting::yes;
        ++gi;
      }
    });
  });
  std::vector<FractionPoint> out;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    double count = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) count += hits[t][gi];
    const double m = static_cast<double>(cfg.trials);
    const double p = count / m;
    out.push_back({grid[gi], p, std::sqrt(p * (1 - p) / m)});
  }
  return out;
}

}  // namespace curtainlab::walker
