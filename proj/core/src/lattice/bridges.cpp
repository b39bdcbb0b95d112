#include <cmath>
#include <string>

#include "half_space.hpp"
#include "sawlab/error.hpp"
#include "sawlab/lattice.hpp"

namespace sawlab::lattice {
namespace {

void check_half_request(int n, int d, const EnumerationLimits& limits) {
  detail::check_dimension(d);
  if (n < 0) throw InvalidArgument("walk length must be >= 0");
  if (n > limits.half_space_cap)
    throw ResourceLimit("n=" + std::to_string(n) +
                        " exceeds the half-space enumeration cap " +
                        std::to_string(limits.half_space_cap));
  detail::check_count_range(n, d);
}

struct CensusVisitor {
  explicit CensusVisitor(int n_max) {
    c.half_counts.assign(n_max + 1, 0);
    c.irreducible.assign(n_max + 1, 0);
    c.irreducible_first_step.assign(n_max + 1, 0);
    c.no_renewal.assign(n_max + 1, 0);
    c.first_renewal.assign(n_max + 1,
                           std::vector<std::uint64_t>(n_max + 1, 0));
  }

  void operator()(const detail::HalfSpacePath& p, std::uint64_t w) {
    const int m = static_cast<int>(p.dirs.size());
    c.half_counts[m] += w;
    const auto r = detail::scan_renewals(p.xs, scratch);
    if (r.first_renewal > 0) {
      c.first_renewal[m][r.first_renewal] += w;
      return;
    }
    c.no_renewal[m] += w;
    if (r.bridge) c.irreducible[m] += w;
    if (r.bridge_first_step) c.irreducible_first_step[m] += w;
  }

  HalfSpaceCensus c;
  std::vector<Coord> scratch;
};

}  // namespace

HalfSpaceCensus half_space_census(int n_max, int dim,
                                  const EnumerationLimits& limits) {
  check_half_request(n_max, dim, limits);
  auto parts = detail::traverse_half_space(
      n_max, dim, true, [n_max] { return CensusVisitor(n_max); });
  HalfSpaceCensus out = std::move(parts.front().c);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto& p = parts[i].c;
    for (int m = 0; m <= n_max; ++m) {
      out.half_counts[m] += p.half_counts[m];
      out.irreducible[m] += p.irreducible[m];
      out.irreducible_first_step[m] += p.irreducible_first_step[m];
      out.no_renewal[m] += p.no_renewal[m];
      for (int k = 0; k <= n_max; ++k)
        out.first_renewal[m][k] += p.first_renewal[m][k];
    }
  }
  out.half_counts[0] = 1;
  out.no_renewal[0] = 1;
  return out;
}

std::uint64_t count_half_space(int n, int dim,
                               const EnumerationLimits& limits) {
  return half_space_census(n, dim, limits).half_counts.at(n);
}

std::uint64_t count_irreducible_bridges(int k, int dim,
                                        BridgeConvention convention,
                                        const EnumerationLimits& limits) {
  if (k < 1) throw InvalidArgument("bridge length must be >= 1");
  const auto c = half_space_census(k, dim, limits);
  return convention == BridgeConvention::standard ? c.irreducible[k]
                                                  : c.irreducible_first_step[k];
}

BridgeTable BridgeTable::build(int K, int dim,
                               const EnumerationLimits& limits) {
  if (K < 1) throw InvalidArgument("BridgeTable: K must be >= 1");
  BridgeTable t;
  t.K_ = K;
  t.dim_ = dim;
  t.saw_counts_ = saw_counts(K, dim, limits);
  auto census = half_space_census(K, dim, limits);
  t.half_counts_ = std::move(census.half_counts);
  t.irreducible_ = std::move(census.irreducible);
  t.beta_estimate_ = kesten_beta(t, K);
  return t;
}

namespace detail {

double solve_kesten(const std::vector<std::uint64_t>& lambda, int d) {
  auto sum = [&](double beta) {
    double s = 0.0, inv = 1.0;
    for (std::size_t k = 1; k < lambda.size(); ++k) {
      inv /= beta;
      s += static_cast<double>(lambda[k]) * inv;
    }
    return s;
  };
  // The sum decreases in beta; it is >= lambda_1 >= 1 at beta = 1 and
  // below 1 at beta = 2d since lambda_k <= (2d-1)^{k-1}.
  double lo = 1.0;
  double hi = 2.0 * d;
  if (sum(lo) < 1.0 || sum(hi) > 1.0)
    throw NumericError("kesten_beta: no root in [1, 2d]");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (sum(mid) >= 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

double kesten_partial_sum(const BridgeTable& table, int K, double beta) {
  if (K < 1 || K > table.K())
    throw InvalidArgument("kesten_partial_sum: K outside the table");
  if (!(beta > 0.0)) throw InvalidArgument("kesten_partial_sum: beta <= 0");
  double sum = 0.0;
  double inv = 1.0;
  for (int k = 1; k <= K; ++k) {
    inv /= beta;
    sum += static_cast<double>(table.irreducible_count(k)) * inv;
  }
  return sum;
}

double kesten_beta(const BridgeTable& table, int K) {
  if (K < 1 || K > table.K())
    throw InvalidArgument("kesten_beta: K outside the table");
  std::vector<std::uint64_t> lambda(K + 1, 0);
  for (int k = 1; k <= K; ++k) lambda[k] = table.irreducible_count(k);
  return detail::solve_kesten(lambda, table.dim());
}

}  // namespace sawlab::lattice
