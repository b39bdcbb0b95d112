#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "sawlab/error.hpp"
#include "sawlab/mcsaw.hpp"
#include "sawlab/parallel.hpp"

namespace sawlab::mcsaw {
namespace {

std::string window_of(const std::vector<LengthSummary>& pts) {
  if (pts.empty()) return "n=[]";
  return "n=" + std::to_string(pts.front().n) + ".." +
         std::to_string(pts.back().n) + " (" + std::to_string(pts.size()) +
         " points)";
}

void check_config(const SamplingConfig& c) {
  if (c.lengths.size() < 3)
    throw InvalidArgument("exponent estimate needs >= 3 lengths");
  if (c.samples < c.batches || c.batches < 2)
    throw InvalidArgument("exponent estimate needs samples >= batches >= 2");
  for (int n : c.lengths)
    if (n < 1) throw InvalidArgument("walk length must be >= 1");
}

struct Series {
  std::vector<double> a, b;
  double acceptance = 0.0;
};

// Runs one chain per length and records two observables per measurement.
template <class Observe>
std::vector<Series> sample_lengths(const SamplingConfig& c, Domain domain,
                                   Observe observe) {
  std::vector<Series> out(c.lengths.size());
  parallel_for(c.lengths.size(), [&](std::size_t i) {
    const int n = c.lengths[i];
    auto rng = make_rng(c.seed, i);
    PivotChain chain(n, 2, domain, c.mode);
    chain.thermalize(c.thermalize_factor * n, rng);
    const auto acc0 = chain.accepted();
    const auto prop0 = chain.proposed();
    Series& s = out[i];
    s.a.reserve(c.samples);
    s.b.reserve(c.samples);
    for (std::size_t m = 0; m < c.samples; ++m) {
      for (std::size_t t = 0; t < c.thin; ++t) chain.step(rng);
      const auto [x, y] = observe(chain);
      s.a.push_back(x);
      s.b.push_back(y);
    }
    s.acceptance = double(chain.accepted() - acc0) /
                   double(std::max<std::uint64_t>(1, chain.proposed() - prop0));
  });
  return out;
}

std::vector<double> sensitivity(const std::vector<LengthSummary>& pts,
                                double divisor) {
  std::vector<double> out;
  if (pts.size() < 3) return out;
  std::vector<LengthSummary> head(pts.begin(), pts.end() - 1);
  std::vector<LengthSummary> tail(pts.begin() + 1, pts.end());
  out.push_back(fit_scaling_exponent(tail, divisor).value);
  out.push_back(fit_scaling_exponent(head, divisor).value);
  return out;
}

}  // namespace

EstimateWithError fit_scaling_exponent(const std::vector<LengthSummary>& points,
                                       double divisor) {
  std::vector<double> x, y, se;
  std::vector<LengthSummary> used;
  EstimateWithError out;
  std::size_t samples = 0;
  for (const auto& p : points) {
    samples += p.value.n_samples;
    if (!(p.value.value > 0.0)) {
      out.flagged = true;
      out.note += "dropped n=" + std::to_string(p.n) + " (zero mean); ";
      continue;
    }
    x.push_back(std::log(double(p.n)));
    y.push_back(std::log(p.value.value));
    se.push_back(p.value.std_error / p.value.value);
    used.push_back(p);
  }
  out.window = window_of(used);
  out.n_samples = std::max<std::size_t>(samples, 1);
  if (x.size() < 2) {
    out.flagged = true;
    out.note += "fewer than two usable points";
    out.value = std::nan("");
    out.std_error = std::numeric_limits<double>::infinity();
    return out;
  }
  const bool have_se =
      std::all_of(se.begin(), se.end(), [](double v) { return v > 0.0; });
  const auto fit = stats::fit_line(x, y, have_se ? std::span<const double>(se)
                                                 : std::span<const double>());
  out.value = fit.slope / divisor;
  out.std_error = std::abs(fit.slope_se / divisor);
  if (!std::isfinite(out.std_error)) {
    out.flagged = true;
    out.std_error = std::numeric_limits<double>::infinity();
  }
  return out;
}

ExponentEstimate estimate_nu(const SamplingConfig& config) {
  check_config(config);
  const auto series =
      sample_lengths(config, Domain::plane, [](const PivotChain& ch) {
        return std::pair{ch.end_to_end_squared(), ch.diameter()};
      });
  ExponentEstimate out;
  out.exponent = "nu";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const int n = config.lengths[i];
    out.per_length.push_back(
        {n, stats::batch_mean(series[i].a, config.batches),
         series[i].acceptance});
    out.per_length_diameter.push_back(
        {n, stats::batch_mean(series[i].b, config.batches),
         series[i].acceptance});
  }
  out.estimate = fit_scaling_exponent(out.per_length, 2.0);
  out.diameter_variant = fit_scaling_exponent(out.per_length_diameter, 1.0);
  out.window_sensitivity = sensitivity(out.per_length, 2.0);
  if (*std::min_element(config.lengths.begin(), config.lengths.end()) < 50) {
    out.estimate.flagged = true;
    out.estimate.note += "lengths below 50 are pre-asymptotic; ";
  }
  return out;
}

ExponentEstimate estimate_rho(const SamplingConfig& config) {
  check_config(config);
  const auto series =
      sample_lengths(config, Domain::plane, [](const PivotChain& ch) {
        const int hits = ch.in_half_space(0, 1) + ch.in_half_space(0, -1) +
                         ch.in_half_space(1, 1) + ch.in_half_space(1, -1);
        return std::pair{hits / 4.0, 0.0};
      });
  ExponentEstimate out;
  out.exponent = "rho";
  for (std::size_t i = 0; i < series.size(); ++i)
    out.per_length.push_back({config.lengths[i],
                              stats::batch_mean(series[i].a, config.batches),
                              series[i].acceptance});
  out.estimate = fit_scaling_exponent(out.per_length, -1.0);
  out.window_sensitivity = sensitivity(out.per_length, -1.0);
  if (*std::min_element(config.lengths.begin(), config.lengths.end()) < 50) {
    out.estimate.flagged = true;
    out.estimate.note += "lengths below 50 are pre-asymptotic; ";
  }
  return out;
}

UniformityCheck pivot_uniformity(int n, std::uint64_t proposals,
                                 std::size_t thin, std::uint64_t seed) {
  if (n < 1 || n > 10)
    throw InvalidArgument("pivot_uniformity: n must be in 1..10");
  if (thin < 1) throw InvalidArgument("pivot_uniformity: thin must be >= 1");
  // Every n-step walk is keyed by its direction word in base 4.
  std::map<std::uint64_t, std::size_t> index;
  {
    std::vector<lattice::Direction> dirs;
    std::vector<std::pair<int, int>> sites{{0, 0}};
    auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(dirs.size()) == n) {
        std::uint64_t key = 0;
        for (auto d : dirs) key = key * 4 + d;
        index.emplace(key, index.size());
        return;
      }
      static constexpr int dx[4] = {1, -1, 0, 0};
      static constexpr int dy[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const std::pair<int, int> next{sites.back().first + dx[k],
                                       sites.back().second + dy[k]};
        if (std::find(sites.begin(), sites.end(), next) != sites.end())
          continue;
        sites.push_back(next);
        dirs.push_back(static_cast<lattice::Direction>(k));
        self(self);
        dirs.pop_back();
        sites.pop_back();
      }
    };
    rec(rec);
  }
  std::vector<double> observed(index.size(), 0.0);
  auto rng = make_rng(seed);
  PivotChain chain(n);
  chain.thermalize(100 * n, rng);
  UniformityCheck out;
  out.walks = index.size();
  for (std::uint64_t t = 1; t <= proposals; ++t) {
    chain.step(rng);
    if (t % thin != 0) continue;
    std::uint64_t key = 0;
    for (auto d : chain.current().directions()) key = key * 4 + d;
    observed[index.at(key)] += 1.0;
    ++out.samples;
  }
  std::vector<double> expected(index.size(),
                               double(out.samples) / double(index.size()));
  out.test = stats::chi_square(observed, expected);
  return out;
}

}  // namespace sawlab::mcsaw
