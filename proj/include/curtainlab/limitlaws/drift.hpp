#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "curtainlab/stats.hpp"
#include "curtainlab/walker/walk.hpp"

namespace curtainlab::limitlaws {

using walker::WalkConfig;

struct TailPoint {
  std::size_t n = 0;
  /// Empirical P(d(Z_n o, o) <= r n).
  double probability = 0.0;
};

struct DriftReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  StreamDomain domain = StreamDomain::walk;
  double lambda = 0.0;
  double standard_error = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  /// The same estimate at n/2, for the convergence check.
  double lambda_half = 0.0;
  /// d(Z_n o, o) per trial.
  std::vector<double> displacements;
  double tail_r = 0.0;
  std::vector<TailPoint> tail;
  /// Fitted kappa in P(d <= r n) ~ e^{-kappa n}; NaN with fewer than two
  /// grid points showing events.
  double tail_rate = std::numeric_limits<double>::quiet_NaN();
};

inline constexpr std::size_t kTailGrid = 8;

/// lambda = mean over trials of d(Z_n o, o) / n, with a normal confidence
/// interval and the deviation tail P(d <= r n), r = lambda/2, on n/8, ..., n.
template <class S>
DriftReport drift_estimate(const WalkConfig<S>& cfg, StreamDomain domain = StreamDomain::walk,
                           double level = 0.95) {
  if (cfg.n == 0) throw std::invalid_argument("drift_estimate: n must be positive");
  std::vector<std::size_t> grid;
  for (std::size_t j = 1; j <= kTailGrid; ++j)
    grid.push_back(std::max<std::size_t>(1, cfg.n * j / kTailGrid));
  const std::size_t half = std::max<std::size_t>(1, cfg.n / 2);
  std::vector<std::vector<double>> at(cfg.trials, std::vector<double>(grid.size()));
  std::vector<double> half_d(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t trial) {
    std::size_t gi = 0;
    walker::walk(
        cfg, trial, cfg.n,
        [&](std::size_t k, const walker::Element<S>& z) {
          const bool on_grid = gi < grid.size() && grid[gi] == k;
          if (!on_grid && k != half) return;
          const double d = walker::displacement(cfg.space, z, cfg.basepoint);
          if (k == half) half_d[trial] = d;
          while (gi < grid.size() && grid[gi] == k) at[trial][gi++] = d;
        },
        domain);
  });

  DriftReport out;
  out.n = cfg.n;
  out.trials = cfg.trials;
  out.domain = domain;
  stats::RunningMoments rate, rate_half;
  out.displacements.resize(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    out.displacements[t] = at[t].back();
    rate.add(at[t].back() / static_cast<double>(cfg.n));
    rate_half.add(half_d[t] / static_cast<double>(half));
  }
  out.lambda = rate.mean();
  out.standard_error = rate.standard_error();
  const double z = stats::normal_quantile(level);
  out.ci_low = out.lambda - z * out.standard_error;
  out.ci_high = out.lambda + z * out.standard_error;
  out.lambda_half = rate_half.mean();

  out.tail_r = 0.5 * out.lambda;
  std::vector<double> xs, ys;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    double hits = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t)
      hits += at[t][gi] <= out.tail_r * static_cast<double>(grid[gi]);
    const double p = hits / static_cast<double>(cfg.trials);
    out.tail.push_back({grid[gi], p});
    if (p > 0.0) {
      xs.push_back(static_cast<double>(grid[gi]));
      ys.push_back(std::log(p));
    }
  }
  if (xs.size() >= 2) out.tail_rate = -stats::least_squares(xs, ys).slope;
  return out;
}

/// Minimum ratio lambda(n) / lambda(n/2) accepted as linear escape.
inline constexpr double kEscapeRatio = 0.85;

/// Boundary convergence needs a drift distinguishable from 0: lambda above
/// three standard errors and d(Z_n o, o) growing linearly between n/2 and n.
inline bool drift_is_positive(const DriftReport& d) {
  return d.lambda > 0.0 && d.lambda > 3.0 * d.standard_error &&
         d.lambda >= kEscapeRatio * d.lambda_half;
}

}  // namespace curtainlab::limitlaws
