#include "sawlab/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>

#include "sawlab/error.hpp"

namespace sawlab::stats {

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;  // series converges slowly; value is 1 to 1e-16
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-18) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestResult ks_two_sample(std::span<const double> xs,
                         std::span<const double> ys) {
  if (xs.empty() || ys.empty())
    throw InvalidArgument("ks_two_sample: samples must be nonempty");
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

TestResult ks_one_sample(std::span<const double> xs,
                         const std::function<double(double)>& cdf) {
  if (xs.empty()) throw InvalidArgument("ks_one_sample: sample is empty");
  std::vector<double> a(xs.begin(), xs.end());
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double ne = std::sqrt(n);
  return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

TestResult chi_square(std::span<const double> observed,
                      std::span<const double> expected, int ddof) {
  if (observed.size() != expected.size() || observed.empty())
    throw InvalidArgument("chi_square: observed/expected size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0))
      throw InvalidArgument("chi_square: expected bin " + std::to_string(i) +
                            " has zero mass");
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  const int dof = static_cast<int>(observed.size()) - 1 - ddof;
  if (dof < 1) throw InvalidArgument("chi_square: no degrees of freedom left");
  return {stat, boost::math::gamma_q(0.5 * dof, 0.5 * stat)};
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y,
                   std::span<const double> y_se) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw InvalidArgument("fit_line: need at least two (x, y) pairs");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit_line: degenerate x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
  if (!y_se.empty()) {
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = (x[i] - mx) / sxx;
      var += c * c * y_se[i] * y_se[i];
    }
    fit.slope_se = std::sqrt(var);
  } else if (n > 2) {
    fit.slope_se = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

EstimateWithError batch_mean(std::span<const double> series,
                             std::size_t batches) {
  EstimateWithError e;
  e.n_samples = series.size();
  if (series.empty()) {
    e.flagged = true;
    e.note = "no samples";
    return e;
  }
  e.value = mean(series);
  batches = std::min(batches, series.size());
  if (batches < 2) {
    e.flagged = true;
    e.note = "too few samples for batch means";
    return e;
  }
  const std::size_t per = series.size() / batches;
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b)
    means[b] = mean(series.subspan(b * per, per));
  e.std_error = std::sqrt(variance(means) / static_cast<double>(batches));
  e.window = std::to_string(batches) + " batches of " + std::to_string(per);
  return e;
}

EstimateWithError proportion(std::size_t successes, std::size_t trials) {
  EstimateWithError e;
  e.n_samples = trials;
  if (trials == 0) {
    e.flagged = true;
    e.note = "no trials";
    return e;
  }
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  e.value = p;
  e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return e;
}

EstimateWithError power_of_proportion(std::size_t successes, std::size_t trials,
                                      int k) {
  if (k < 1) throw InvalidArgument("power_of_proportion: k must be >= 1");
  EstimateWithError e = proportion(successes, trials);
  if (trials < static_cast<std::size_t>(k)) {
    e.flagged = true;
    e.note = "fewer trials than subset size";
    return e;
  }
  // C(s, k) / C(n, k) as a running product.
  double ratio = 1.0;
  for (int i = 0; i < k; ++i) {
    const double num = static_cast<double>(successes) - i;
    if (num <= 0.0) {
      ratio = 0.0;
      break;
    }
    ratio *= num / (static_cast<double>(trials) - i);
  }
  const double p = e.value;
  e.std_error = k * std::pow(p, k - 1) * e.std_error;
  e.value = ratio;
  e.window = "k-subsets, k=" + std::to_string(k);
  return e;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

}  // namespace sawlab::stats
