#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace curtainlab::stats {

/// Streaming mean/variance (Welford). Merge is associative, so per-thread
/// accumulators can be combined in any grouping.
class RunningMoments {
 public:
  void add(double x);
  void merge(const RunningMoments& other);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const;
  double stddev() const;
  /// Standard error of the mean.
  double standard_error() const;
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

RunningMoments moments(std::span<const double> xs);

double normal_cdf(double x, double mean = 0.0, double variance = 1.0);

/// Two-sided normal quantile for a confidence level, e.g. 0.95 -> 1.95996.
double normal_quantile(double p);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf);

/// Asymptotic p-value P(D_n > d) with Stephens' small-sample correction.
double ks_p_value(std::size_t n, double statistic);

KsResult ks_test_normal(std::span<const double> samples, double mean,
                        double variance);

/// Continuity-corrected test for samples on a lattice of spacing h: the
/// empirical CDF at each atom v is compared with F(v + h/2), and just below v
/// with F(v - h/2).
KsResult ks_test_normal_lattice(std::span<const double> samples, double mean,
                                double variance, double h);

/// Kolmogorov survival function Q(x) = 2 sum (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_survival(double x);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
LinearFit least_squares(std::span<const double> xs, std::span<const double> ys);

}  // namespace curtainlab::stats
