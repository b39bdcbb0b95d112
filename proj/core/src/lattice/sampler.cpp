#include <algorithm>
#include <cmath>
#include <string>

#include "half_space.hpp"
#include "sawlab/error.hpp"
#include "sawlab/lattice.hpp"

namespace sawlab::lattice {
namespace {

// Stores irreducible bridges and renewal-free walks explicitly, by length.
struct Collector {
  explicit Collector(int K) : bridges(K + 1), tails(K + 1) {}

  void operator()(const detail::HalfSpacePath& p, std::uint64_t) {
    const int m = static_cast<int>(p.dirs.size());
    const auto r = detail::scan_renewals(p.xs, scratch);
    if (r.first_renewal > 0) return;
    tails[m].insert(tails[m].end(), p.dirs.begin(), p.dirs.end());
    if (r.bridge)
      bridges[m].insert(bridges[m].end(), p.dirs.begin(), p.dirs.end());
  }

  std::vector<std::vector<Direction>> bridges;
  std::vector<std::vector<Direction>> tails;
  std::vector<Coord> scratch;
};

Collector collect(int K, int d, const EnumerationLimits& limits) {
  detail::check_dimension(d);
  if (K < 1) throw InvalidArgument("sampler: K must be >= 1");
  if (K > limits.half_space_cap)
    throw ResourceLimit("sampler: K exceeds the half-space cap");
  auto parts = detail::traverse_half_space(K, d, false,
                                           [K] { return Collector(K); });
  Collector out = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i)
    for (int m = 0; m <= K; ++m) {
      auto& b = parts[i].bridges[m];
      auto& t = parts[i].tails[m];
      out.bridges[m].insert(out.bridges[m].end(), b.begin(), b.end());
      out.tails[m].insert(out.tails[m].end(), t.begin(), t.end());
    }
  return out;
}

double uniform01(Rng& rng) {
  return std::generate_canonical<double, 53>(rng);
}

std::size_t uniform_index(std::size_t n, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Index i with probability weights[i] / sum.
std::size_t draw_weighted(const std::vector<double>& cumulative, Rng& rng) {
  const double u = uniform01(rng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(it - cumulative.begin(),
                               cumulative.size() - 1);
}

}  // namespace

HalfSpaceSampler::HalfSpaceSampler(const BridgeTable& table,
                                   std::optional<double> beta)
    : K_(table.K()),
      dim_(table.dim()),
      beta_(beta.value_or(table.beta_estimate())) {
  if (!(beta_ > 0.0)) throw InvalidArgument("HalfSpaceSampler: beta <= 0");
  auto c = collect(K_, dim_, EnumerationLimits{.saw_cap = 0,
                                               .half_space_cap = K_});
  bridges_ = std::move(c.bridges);
  weights_.resize(K_);
  double total = 0.0;
  for (int k = 1; k <= K_; ++k) {
    const std::size_t count = bridges_[k].size() / k;
    if (count != table.irreducible_count(k))
      throw NumericError("HalfSpaceSampler: bridge list disagrees with table");
    weights_[k - 1] = static_cast<double>(count) * std::pow(beta_, -k);
    total += weights_[k - 1];
  }
  cumulative_.resize(K_);
  double acc = 0.0;
  for (int k = 0; k < K_; ++k) {
    weights_[k] /= total;
    acc += weights_[k];
    cumulative_[k] = acc;
  }
}

std::size_t HalfSpaceSampler::bridge_count(int k) const {
  if (k < 1 || k > K_) return 0;
  return bridges_[k].size() / k;
}

int HalfSpaceSampler::draw_length(Rng& rng) const {
  return static_cast<int>(draw_weighted(cumulative_, rng)) + 1;
}

std::span<const Direction> HalfSpaceSampler::draw_bridge(int k,
                                                         Rng& rng) const {
  const std::size_t i = uniform_index(bridge_count(k), rng);
  return {bridges_[k].data() + i * k, static_cast<std::size_t>(k)};
}

namespace {

template <class OnBridge>
void draw_bridges(int steps, const HalfSpaceSampler& s, Rng& rng,
                  OnBridge&& on_bridge) {
  if (steps < 0) throw InvalidArgument("sample_half_space_saw: steps < 0");
  int total = 0;
  while (total < steps) {
    const int k = s.draw_length(rng);
    on_bridge(s.draw_bridge(k, rng));
    total += k;
  }
}

}  // namespace

Walk sample_half_space_saw(int steps, const HalfSpaceSampler& sampler,
                           Rng& rng) {
  std::vector<Direction> dirs;
  dirs.reserve(steps + sampler.K());
  draw_bridges(steps, sampler, rng, [&](std::span<const Direction> b) {
    dirs.insert(dirs.end(), b.begin(), b.end());
  });
  return Walk::from_directions(sampler.dim(), dirs);
}

std::vector<int> sample_bridge_lengths(int steps,
                                       const HalfSpaceSampler& sampler,
                                       Rng& rng) {
  std::vector<int> out;
  draw_bridges(steps, sampler, rng, [&](std::span<const Direction> b) {
    out.push_back(static_cast<int>(b.size()));
  });
  return out;
}

WeightedHalfSpaceSampler::WeightedHalfSpaceSampler(
    int K, int dim, const EnumerationLimits& limits)
    : K_(K), dim_(dim) {
  auto c = collect(K, dim, limits);
  bridges_ = std::move(c.bridges);
  tails_ = std::move(c.tails);
  std::vector<std::uint64_t> lambda(K + 1, 0);
  for (int k = 1; k <= K; ++k) lambda[k] = bridges_[k].size() / k;
  critical_weight_ = 1.0 / detail::solve_kesten(lambda, dim);
}

Walk WeightedHalfSpaceSampler::sample(double a, Rng& rng) const {
  if (!(a > 0.0) || !(a < critical_weight_))
    throw InvalidArgument("weight a=" + std::to_string(a) +
                          " outside (0, 1/beta_K)");
  // Upsilon(a) = 1 + T(a) / (1 - L(a)) with L the irreducible-bridge and T
  // the nonempty renewal-free generating polynomial.
  std::vector<double> bridge_cum(K_), tail_cum(K_);
  double L = 0.0, T = 0.0, ak = 1.0;
  for (int k = 1; k <= K_; ++k) {
    ak *= a;
    L += static_cast<double>(bridges_[k].size() / k) * ak;
    T += static_cast<double>(tails_[k].size() / k) * ak;
    bridge_cum[k - 1] = L;
    tail_cum[k - 1] = T;
  }
  const double Z = 1.0 + T / (1.0 - L);
  std::vector<Direction> dirs;
  if (uniform01(rng) * Z < 1.0) return Walk::from_directions(dim_, dirs);
  const long m = std::geometric_distribution<long>(1.0 - L)(rng);
  for (long i = 0; i < m; ++i) {
    const int k = static_cast<int>(draw_weighted(bridge_cum, rng)) + 1;
    const std::size_t j = uniform_index(bridges_[k].size() / k, rng);
    dirs.insert(dirs.end(), bridges_[k].begin() + j * k,
                bridges_[k].begin() + (j + 1) * k);
  }
  const int t = static_cast<int>(draw_weighted(tail_cum, rng)) + 1;
  const std::size_t j = uniform_index(tails_[t].size() / t, rng);
  dirs.insert(dirs.end(), tails_[t].begin() + j * t,
              tails_[t].begin() + (j + 1) * t);
  return Walk::from_directions(dim_, dirs);
}

Walk sample_weighted_half_space(double a, const WeightedHalfSpaceSampler& s,
                                Rng& rng) {
  return s.sample(a, rng);
}

}  // namespace sawlab::lattice
