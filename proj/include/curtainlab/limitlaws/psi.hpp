#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "curtainlab/limitlaws/boundary.hpp"
#include "curtainlab/limitlaws/cocycle.hpp"

namespace curtainlab::limitlaws {

struct PsiEstimate {
  double value = 0.0;
  std::size_t used = 0;
  /// Pairs with (x|y)_o = +infinity, left out of the mean.
  std::size_t rejected = 0;
};

/// psi(x) = -2 * mean of (x|y)_o over y in the nu-check sample.
template <class S>
PsiEstimate estimate_psi(const S& s, const typename S::Boundary& x,
                         const BoundarySampleSet<S>& check, const typename S::Point& o) {
  PsiEstimate out;
  double acc = 0.0, weight = 0.0;
  for (std::size_t i = 0; i < check.size(); ++i) {
    const double g = s.boundary_gromov_product(x, check.points[i], o);
    if (!std::isfinite(g)) {
      ++out.rejected;
      continue;
    }
    acc += check.weights[i] * g;
    weight += check.weights[i];
    ++out.used;
  }
  out.value = weight > 0.0 ? -2.0 * acc / weight : std::numeric_limits<double>::quiet_NaN();
  return out;
}

struct PsiSummary {
  std::vector<double> values;
  double sup = -std::numeric_limits<double>::infinity();
  double inf = std::numeric_limits<double>::infinity();
  double sup_abs = 0.0;
  std::size_t rejected = 0;
};

template <class S>
PsiSummary psi_table(const S& s, const std::vector<typename S::Boundary>& xs,
                     const BoundarySampleSet<S>& check, const typename S::Point& o) {
  PsiSummary out;
  for (const auto& x : xs) {
    const auto e = estimate_psi(s, x, check, o);
    out.values.push_back(e.value);
    out.rejected += e.rejected;
    out.sup = std::max(out.sup, e.value);
    out.inf = std::min(out.inf, e.value);
    out.sup_abs = std::max(out.sup_abs, std::abs(e.value));
  }
  return out;
}

struct VarianceEstimate {
  /// Mean over (g, x) ~ mu x nu of (beta - psi(x) + psi(gx) - lambda)^2.
  double sigma2 = 0.0;
  double standard_error = 0.0;
  /// Mean of beta(g, x) over the same pairs (the average identity).
  double beta_mean = 0.0;
  double beta_mean_se = 0.0;
  std::size_t points = 0;
};

/// The sum over g is exact (mu is finitely supported); the standard errors
/// are over the boundary sample.
template <class S, class Psi>
VarianceEstimate variance_estimate(const WalkConfig<S>& cfg, const BoundarySampleSet<S>& nu,
                                   Psi&& psi, double lambda) {
  const S& s = cfg.space;
  std::vector<double> v(nu.size()), b(nu.size());
  parallel_for(nu.size(), cfg.threads, [&](std::size_t i) {
    const auto& x = nu.points[i];
    const double px = psi(x);
    double sq = 0.0, mean = 0.0;
    for (std::size_t j = 0; j < cfg.generators.size(); ++j) {
      const auto& g = cfg.generators[j];
      const double beta = busemann_cocycle(s, g, x, cfg.basepoint);
      const double c = beta - px + psi(walker::act_boundary(s, g, x)) - lambda;
      sq += cfg.weights[j] * c * c;
      mean += cfg.weights[j] * beta;
    }
    v[i] = sq;
    b[i] = mean;
  });
  const auto mv = stats::moments(v), mb = stats::moments(b);
  return {mv.mean(), mv.standard_error(), mb.mean(), mb.standard_error(), nu.size()};
}

struct CohomologyCheck {
  /// Per probe point: mean over g ~ mu of beta(g,x) + psi(gx) - psi(x).
  std::vector<double> drifts;
  std::vector<double> standard_errors;
  double pooled = 0.0;
  /// Largest |drift - pooled| in units of the combined standard error.
  double max_z = 0.0;
};

/// The centred cocycle has the same mean drift at every x. Standard errors
/// come from the psi estimates, computed on `batches` disjoint parts of the
/// nu-check sample.
template <class S>
CohomologyCheck cohomological_consistency(const WalkConfig<S>& cfg,
                                          const std::vector<typename S::Boundary>& probes,
                                          const BoundarySampleSet<S>& check,
                                          std::size_t batches = 10) {
  const S& s = cfg.space;
  const auto& o = cfg.basepoint;
  CohomologyCheck out;
  std::vector<BoundarySampleSet<S>> parts(batches);
  for (std::size_t i = 0; i < check.size(); ++i) {
    auto& p = parts[i % batches];
    p.points.push_back(check.points[i]);
    p.weights.push_back(check.weights[i]);
  }
  stats::RunningMoments all;
  for (const auto& x : probes) {
    stats::RunningMoments per;
    for (const auto& part : parts) {
      const double px = estimate_psi(s, x, part, o).value;
      double d = 0.0;
      for (std::size_t j = 0; j < cfg.generators.size(); ++j) {
        const auto& g = cfg.generators[j];
        d += cfg.weights[j] * (busemann_cocycle(s, g, x, o) +
                               estimate_psi(s, walker::act_boundary(s, g, x), part, o).value - px);
      }
      per.add(d);
    }
    out.drifts.push_back(per.mean());
    out.standard_errors.push_back(per.standard_error());
    all.add(per.mean());
  }
  out.pooled = all.mean();
  for (std::size_t i = 0; i < out.drifts.size(); ++i) {
    const double se = std::max(out.standard_errors[i], 1e-12);
    out.max_z = std::max(out.max_z, std::abs(out.drifts[i] - out.pooled) / se);
  }
  return out;
}

}  // namespace curtainlab::limitlaws
