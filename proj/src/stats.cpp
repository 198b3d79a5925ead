#include "curtainlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace curtainlab::stats {

void RunningMoments::add(double x) {
  if (n_ == 0) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double total = static_cast<double>(n_ + other.n_);
  const double delta = other.mean_ - mean_;
  mean_ += delta * static_cast<double>(other.n_) / total;
  m2_ += other.m2_ + delta * delta * static_cast<double>(n_) *
                         static_cast<double>(other.n_) / total;
  n_ += other.n_;
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
}

double RunningMoments::variance() const {
  return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double RunningMoments::stddev() const { return std::sqrt(variance()); }

double RunningMoments::standard_error() const {
  return n_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
}

RunningMoments moments(std::span<const double> xs) {
  RunningMoments m;
  for (double x : xs) m.add(x);
  return m;
}

double normal_cdf(double x, double mean, double variance) {
  if (variance <= 0.0) return x < mean ? 0.0 : 1.0;
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p outside (0,1)");
  // Two-sided: find z with P(|Z| <= z) = p by bisection on erfc.
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::erf(mid / std::numbers::sqrt2) < p) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;  // series converges slowly; value is 1 to 1e-20
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_p_value(std::size_t n, double statistic) {
  const double root = std::sqrt(static_cast<double>(n));
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * statistic);
}

KsResult ks_test_normal(std::span<const double> samples, double mean,
                        double variance) {
  KsResult r;
  r.n = samples.size();
  r.statistic = ks_statistic(samples, [&](double x) {
    return normal_cdf(x, mean, variance);
  });
  r.p_value = ks_p_value(r.n, r.statistic);
  return r;
}

KsResult ks_test_normal_lattice(std::span<const double> samples, double mean,
                                double variance, double h) {
  if (samples.empty()) throw std::invalid_argument("ks_test_normal_lattice: no samples");
  if (!(h > 0.0)) throw std::invalid_argument("ks_test_normal_lattice: spacing must be positive");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  KsResult r;
  r.n = sorted.size();
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] - sorted[i] < 1e-6 * h) ++j;
    const double v = sorted[i];
    const double below = static_cast<double>(i) / n, upto = static_cast<double>(j) / n;
    r.statistic = std::max({r.statistic, std::abs(upto - normal_cdf(v + 0.5 * h, mean, variance)),
                            std::abs(below - normal_cdf(v - 0.5 * h, mean, variance))});
    i = j;
  }
  r.p_value = ks_p_value(r.n, r.statistic);
  return r;
}

LinearFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("least_squares: need >= 2 paired samples");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace curtainlab::stats
