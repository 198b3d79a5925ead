#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "curtainlab/limitlaws/drift.hpp"

namespace curtainlab::limitlaws {

/// Forward walks hit nu; reversed walks (increments w^-1) hit nu-check.
enum class Direction { forward, reversed };

inline std::string to_string(Direction d) {
  return d == Direction::forward ? "forward" : "reversed";
}

/// Empirical hitting measure: proxies toward Z_depth o, one per trial.
template <class S>
struct BoundarySampleSet {
  std::vector<typename S::Boundary> points;
  std::vector<double> weights;
  Direction direction = Direction::forward;
  std::size_t depth = 0;
  std::size_t trials = 0;

  std::size_t size() const { return points.size(); }
};

template <class S>
BoundarySampleSet<S> sample_boundary(const WalkConfig<S>& cfg, Direction dir, std::size_t depth,
                                     std::size_t count, const DriftReport& drift) {
  if (!drift_is_positive(drift))
    throw std::domain_error("sample_boundary: drift indistinguishable from 0 (lambda = " +
                            std::to_string(drift.lambda) + ")");
  if (count == 0) throw std::invalid_argument("sample_boundary: count must be positive");
  const bool rev = dir == Direction::reversed;
  const StreamDomain domain = rev ? StreamDomain::boundary_reversed : StreamDomain::boundary_forward;
  BoundarySampleSet<S> out;
  out.direction = dir;
  out.depth = depth;
  out.trials = count;
  out.points.resize(count);
  out.weights.assign(count, 1.0 / static_cast<double>(count));
  parallel_for(count, cfg.threads, [&](std::size_t trial) {
    const auto z = walker::walk_element(cfg, trial, depth, domain, rev);
    out.points[trial] = walker::orbit_ray(cfg.space, z, cfg.basepoint);
  });
  return out;
}

}  // namespace curtainlab::limitlaws
