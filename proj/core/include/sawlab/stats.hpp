#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sawlab {

/// Point estimate with a standard error and a description of the data
/// window it was computed from.
struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::string window;
  bool flagged = false;
  std::string note;
};

namespace stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Kolmogorov limiting survival function Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda);

/// Two-sample Kolmogorov–Smirnov test with the asymptotic p-value
/// (effective-size correction of Stephens).
TestResult ks_two_sample(std::span<const double> xs, std::span<const double> ys);

/// One-sample KS test against a continuous CDF.
TestResult ks_one_sample(std::span<const double> xs,
                         const std::function<double(double)>& cdf);

/// Pearson chi-square goodness of fit; degrees of freedom = bins - 1 - ddof.
/// Throws InvalidArgument if any expected count is zero.
TestResult chi_square(std::span<const double> observed,
                      std::span<const double> expected, int ddof = 0);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  ///< from per-point y errors when given, else residuals
  double residual_rms = 0.0;
};

/// Unweighted least squares y = a + b x. With `y_se` the slope error is the
/// linear propagation of the per-point errors; otherwise it comes from the
/// residual scatter.
LinearFit fit_line(std::span<const double> x, std::span<const double> y,
                   std::span<const double> y_se = {});

/// Mean with batch-means standard error over `batches` contiguous batches.
EstimateWithError batch_mean(std::span<const double> series,
                             std::size_t batches = 32);

/// Fraction of successes with the binomial standard error.
EstimateWithError proportion(std::size_t successes, std::size_t trials);

/// Unbiased estimate of p^k from `successes` out of `trials` i.i.d.
/// Bernoulli(p) draws: the fraction of k-subsets that are all successes.
/// The standard error is the delta-method value k p^(k-1) SE(p).
EstimateWithError power_of_proportion(std::size_t successes, std::size_t trials,
                                      int k);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);

}  // namespace stats
}  // namespace sawlab
