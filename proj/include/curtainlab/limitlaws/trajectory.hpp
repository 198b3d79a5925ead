#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "curtainlab/geometry/common.hpp"
#include "curtainlab/limitlaws/drift.hpp"

namespace curtainlab::limitlaws {

/// Proxy for the forward limit point of one trajectory: the ray toward
/// Z_horizon o.
template <class S>
typename S::Boundary forward_limit(const WalkConfig<S>& cfg, std::size_t trial,
                                   std::size_t horizon,
                                   StreamDomain domain = StreamDomain::walk) {
  return walker::orbit_ray(cfg.space, walker::walk_element(cfg, trial, horizon, domain),
                           cfg.basepoint);
}

struct GapSeries {
  /// gap[k-1] for k = 1..n.
  std::vector<double> gap;
  double max = 0.0;
  double slope = 0.0;
};

/// k -> |b_xi(Z_k o) + d(Z_k o, o)| for the forward limit xi of the same
/// trajectory: twice the distance from Z_k o to the ray [o, xi), which stays
/// bounded while d(Z_k o, o) grows linearly.
template <class S>
GapSeries displacement_busemann_gap(const WalkConfig<S>& cfg, std::size_t trial, std::size_t n,
                                    const typename S::Boundary& xi_plus,
                                    StreamDomain domain = StreamDomain::walk) {
  if (n < 2) throw std::invalid_argument("displacement_busemann_gap: n must be >= 2");
  GapSeries out;
  out.gap.reserve(n);
  const S& s = cfg.space;
  const auto& o = cfg.basepoint;
  walker::walk(
      cfg, trial, n,
      [&](std::size_t k, const walker::Element<S>& z) {
        if (k == 0) return;
        const double b = walker::orbit_busemann(s, xi_plus, o, z);
        out.gap.push_back(std::abs(b + walker::displacement(s, z, o)));
      },
      domain);
  std::vector<double> ks(n);
  for (std::size_t k = 0; k < n; ++k) ks[k] = static_cast<double>(k + 1);
  for (double g : out.gap) out.max = std::max(out.max, g);
  out.slope = stats::least_squares(ks, out.gap).slope;
  return out;
}

/// Same series with b_xi evaluated through the approximant Z_N o of the
/// forward limit (N = horizon): gap_k = d(Z_k o, o) + d(Z_k o, Z_N o) - d(Z_N o, o).
/// Stays accurate where ideal points lose precision in floating point; the
/// suffix products w_{k+1} ... w_N make each step one composition.
template <class S>
GapSeries displacement_busemann_gap_approx(const WalkConfig<S>& cfg, std::size_t trial,
                                           std::size_t n, std::size_t horizon,
                                           StreamDomain domain = StreamDomain::walk) {
  if (n < 2 || horizon < n)
    throw std::invalid_argument("displacement_busemann_gap: need 2 <= n <= horizon");
  const S& s = cfg.space;
  const auto& o = cfg.basepoint;
  const auto steps = walker::walk_increments(cfg, trial, horizon, domain);
  std::vector<double> d(n + 1);
  walker::Element<S> z = walker::identity(s);
  for (std::size_t k = 1; k <= horizon; ++k) {
    walker::accumulate(s, z, cfg.generators[steps[k - 1]]);
    if (k <= n) d[k] = walker::displacement(s, z, o);
  }
  const double far = walker::displacement(s, z, o);
  GapSeries out;
  out.gap.assign(n, 0.0);
  walker::Element<S> suffix = walker::identity(s);
  for (std::size_t k = horizon; k >= 1; --k) {
    if (k <= n) {
      const double to_far = walker::displacement(s, suffix, o);
      out.gap[k - 1] = std::abs(d[k] + to_far - far);
    }
    suffix = walker::compose(s, cfg.generators[steps[k - 1]], suffix);
  }
  std::vector<double> ks(n);
  for (std::size_t k = 0; k < n; ++k) ks[k] = static_cast<double>(k + 1);
  for (double g : out.gap) out.max = std::max(out.max, g);
  out.slope = stats::least_squares(ks, out.gap).slope;
  return out;
}

struct MonitorReport {
  double epsilon = 0.0;
  int L = 1;
  double lambda = 0.0;
  /// holds[k-1] = truth values at k = 1..n of
  ///   (Z_k x | Z_k o)_o >= (lambda - eps) k,
  ///   (y | Z_k o)_o <= eps k,
  ///   (y | Z_k x)_o <= eps k + 2L + 1.
  std::vector<std::array<bool, 3>> holds;
  std::optional<std::size_t> first_failure;
  std::size_t from = 0;
  std::size_t checked = 0;
  std::size_t passed = 0;

  double pass_rate() const {
    return checked == 0 ? 1.0 : static_cast<double>(passed) / static_cast<double>(checked);
  }
};

/// Audits the three Gromov-product inequalities along one trajectory, with x
/// drawn from nu and y from nu-check. Pass counts cover k >= from.
template <class S>
MonitorReport geometric_estimates_monitor(const WalkConfig<S>& cfg, std::size_t trial,
                                          const typename S::Boundary& x,
                                          const typename S::Boundary& y, double epsilon, int L,
                                          double lambda, std::size_t n, std::size_t from = 100) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5 * lambda))
    throw std::invalid_argument("monitor: epsilon must lie in (0, lambda/2)");
  if (L < 1) throw std::invalid_argument("monitor: L must be >= 1");
  const S& s = cfg.space;
  const auto& o = cfg.basepoint;
  MonitorReport out;
  out.epsilon = epsilon;
  out.L = L;
  out.lambda = lambda;
  out.from = from;
  out.holds.reserve(n);
  walker::walk(
      cfg, trial, n,
      [&](std::size_t k, const walker::Element<S>& z) {
        if (k == 0) return;
        const double kk = static_cast<double>(k);
        const auto zo = walker::act(s, z, o);
        const auto zx = walker::act_boundary(s, z, x);
        const std::array<bool, 3> h{
            geometry::mixed_gromov_product(s, zo, zx, o) >= (lambda - epsilon) * kk,
            geometry::mixed_gromov_product(s, zo, y, o) <= epsilon * kk,
            s.boundary_gromov_product(y, zx, o) <= epsilon * kk + 2.0 * L + 1.0};
        const bool all = h[0] && h[1] && h[2];
        if (!all && !out.first_failure) out.first_failure = k;
        if (k >= from) {
          ++out.checked;
          out.passed += all;
        }
        out.holds.push_back(h);
      },
      StreamDomain::monitor);
  return out;
}

}  // namespace curtainlab::limitlaws
