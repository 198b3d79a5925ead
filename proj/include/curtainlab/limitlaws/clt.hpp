#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "curtainlab/limitlaws/drift.hpp"
#include "curtainlab/limitlaws/psi.hpp"

namespace curtainlab::limitlaws {

inline constexpr std::size_t kMinCltTrials = 200;

struct CltReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  /// Centring drift, from an independent batch of trials.
  double lambda = 0.0;
  double lambda_se = 0.0;
  std::vector<double> displacements;
  /// S_n = (d(Z_n o, o) - n lambda) / sqrt(n).
  std::vector<double> s_n;
  double empirical_variance = 0.0;
  double sigma2 = 0.0;
  double sigma2_se = 0.0;
  /// Spacing of S_n when displacements are integers (trees), else 0. The KS
  /// tests are continuity-corrected on this lattice.
  double lattice = 0.0;
  stats::KsResult ks_formula;
  stats::KsResult ks_empirical;
  /// sigma2 > 3 standard errors.
  bool nondegenerate = false;
};

/// gcd of the pairwise differences when every value is an integer, else 0.
inline double lattice_spacing(const std::vector<double>& xs) {
  std::uint64_t g = 0;
  for (double x : xs) {
    if (std::abs(x - std::round(x)) > 1e-9) return 0.0;
    g = std::gcd(g, static_cast<std::uint64_t>(std::llabs(std::llround(x - xs.front()))));
  }
  return static_cast<double>(g);
}

template <class S>
CltReport clt_report(const WalkConfig<S>& cfg, const DriftReport& independent,
                     const VarianceEstimate& variance) {
  if (cfg.trials < kMinCltTrials)
    throw std::invalid_argument("clt_report: needs at least " + std::to_string(kMinCltTrials) +
                                " trials");
  if (independent.domain == StreamDomain::walk)
    throw std::invalid_argument("clt_report: centring drift must come from an independent batch");
  CltReport out;
  out.n = cfg.n;
  out.trials = cfg.trials;
  out.lambda = independent.lambda;
  out.lambda_se = independent.standard_error;
  out.displacements = drift_estimate(cfg, StreamDomain::walk).displacements;
  const double n = static_cast<double>(cfg.n), root = std::sqrt(n);
  for (double d : out.displacements) out.s_n.push_back((d - n * out.lambda) / root);
  out.empirical_variance = stats::moments(out.s_n).variance();
  out.sigma2 = variance.sigma2;
  out.sigma2_se = variance.standard_error;
  out.lattice = lattice_spacing(out.displacements) / root;
  auto ks = [&](double variance) {
    return out.lattice > 0 ? stats::ks_test_normal_lattice(out.s_n, 0.0, variance, out.lattice)
                           : stats::ks_test_normal(out.s_n, 0.0, variance);
  };
  out.ks_formula = ks(out.sigma2);
  out.ks_empirical = ks(out.empirical_variance);
  out.nondegenerate = out.sigma2 > 3.0 * out.sigma2_se && out.sigma2 > 0.0;
  return out;
}

}  // namespace curtainlab::limitlaws
