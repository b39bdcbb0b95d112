#pragma once

// Pivot-algorithm sampling of long self-avoiding walks and estimators for
// the exponents nu, rho and the diameter scaling laws.

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sawlab/lattice.hpp"
#include "sawlab/rng.hpp"
#include "sawlab/stats.hpp"

namespace sawlab::mcsaw {

using lattice::Coord;
using lattice::Walk;

enum class Domain {
  plane,       ///< all n-step SAWs from the origin
  half_plane,  ///< points 1..n have last coordinate > 0
};

enum class ChainMode {
  self_avoiding,
  random_walk,  ///< debug: self-avoidance check disabled
};

/// Signed permutation of the axes: image axis of e_a is perm[a], sign[a].
struct LatticeSymmetry {
  std::vector<int> perm;
  std::vector<int> sign;
};

/// All 2^d d! symmetries, identity first.
std::vector<LatticeSymmetry> lattice_symmetries(int dim);

struct PivotOutcome {
  bool accepted = false;
  int pivot = 0;
  int symmetry = 0;
};

/// Pivot Markov chain on fixed-length walks. The default proposal picks the
/// pivot uniformly in 0..n-1 and a non-identity symmetry uniformly, applies
/// it to the part of the walk after the pivot, and accepts iff the result is
/// admissible.
class PivotChain {
 public:
  /// Starts from the straight walk along e1 (plane) or e_d (half-plane).
  PivotChain(int n, int dim = 2, Domain domain = Domain::plane,
             ChainMode mode = ChainMode::self_avoiding);
  /// Starts from `initial`, which must be admissible.
  PivotChain(const Walk& initial, Domain domain = Domain::plane,
             ChainMode mode = ChainMode::self_avoiding);

  int n() const { return n_; }
  int dim() const { return dim_; }
  Domain domain() const { return domain_; }
  std::uint64_t accepted() const { return accepted_; }
  std::uint64_t proposed() const { return proposed_; }
  int symmetry_count() const { return static_cast<int>(syms_.size()); }

  Walk current() const;
  /// Point-major coordinates of the current walk.
  const std::vector<Coord>& coords() const { return pts_; }

  PivotOutcome step(Rng& rng);
  /// Deterministic proposal with a given pivot site and symmetry index.
  PivotOutcome propose(int pivot, int symmetry);
  /// Runs until `moves` proposals have been accepted.
  void thermalize(std::uint64_t moves, Rng& rng);

  /// |w_n - w_0|^2.
  double end_to_end_squared() const;
  /// Largest Euclidean distance between two sites.
  double diameter() const;
  /// Whether points 1..n lie in the open half-space {x_axis * sign > 0}.
  bool in_half_space(int axis, int sign) const;

 private:
  void rebuild_index();
  bool admissible_tail(int pivot, const LatticeSymmetry& g);

  int n_;
  int dim_;
  Domain domain_;
  ChainMode mode_;
  std::vector<LatticeSymmetry> syms_;
  std::vector<Coord> pts_;
  std::vector<Coord> trial_;
  // Open-addressing map from packed site to index.
  std::vector<std::uint64_t> keys_;
  std::vector<std::int32_t> vals_;
  std::uint64_t mask_ = 0;
  std::uint64_t accepted_ = 0;
  std::uint64_t proposed_ = 0;
};

/// Largest pairwise distance among planar lattice points (convex hull).
double planar_diameter(std::span<const Coord> xy);

struct SamplingConfig {
  std::vector<int> lengths{100, 200, 400, 800};
  std::size_t samples = 20000;     ///< measurements per length
  std::size_t thin = 10;           ///< proposals between measurements
  std::uint64_t thermalize_factor = 10;  ///< accepted moves = factor * n
  std::size_t batches = 32;
  std::uint64_t seed = 1;
  ChainMode mode = ChainMode::self_avoiding;
};

struct LengthSummary {
  int n = 0;
  EstimateWithError value;  ///< <R^2>, <diam> or the half-plane fraction
  double acceptance = 0.0;
};

struct ExponentEstimate {
  std::string exponent;
  EstimateWithError estimate;
  /// nu from diam ~ n^nu; unused for rho.
  EstimateWithError diameter_variant;
  std::vector<LengthSummary> per_length;
  std::vector<LengthSummary> per_length_diameter;
  /// Slopes with either end of the length window dropped.
  std::vector<double> window_sensitivity;
};

/// Slope of log(value) against log(n), divided by `divisor`. Per-point
/// errors propagate as se / value. Points with value <= 0 are dropped and
/// the result flagged.
EstimateWithError fit_scaling_exponent(const std::vector<LengthSummary>& points,
                                       double divisor = 1.0);

/// nu-hat = slope(log <R^2> vs log n) / 2, plus the diameter-based variant.
ExponentEstimate estimate_nu(const SamplingConfig& config);

/// rho-hat = -slope(log P(half-plane) vs log n). The half-plane indicator
/// is averaged over the four coordinate half-planes.
ExponentEstimate estimate_rho(const SamplingConfig& config);

/// Uniformity of the pivot chain on n-step walks: chi-square of the visit
/// histogram (one sample every `thin` proposals) against the uniform law on
/// all C_n walks.
struct UniformityCheck {
  std::size_t walks = 0;
  std::size_t samples = 0;
  stats::TestResult test;
};
UniformityCheck pivot_uniformity(int n, std::uint64_t proposals,
                                 std::size_t thin, std::uint64_t seed);

using Rational = boost::rational<std::int64_t>;

struct ExponentSet {
  Rational nu, gamma, rho;
  Rational a, b, a_prime, b_prime, alpha;
};

/// a = 1 + (2rho - gamma)/(2nu), b = 1 - gamma/(2nu), a' = 2,
/// b' = 2 - 1/nu, alpha = 2 - 2nu.
ExponentSet exponent_algebra(Rational nu, Rational gamma, Rational rho);

/// Parses "p/q", "p" or a terminating decimal such as "0.75".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

enum class MassKind { saw_free, saw_half, sap_half, sap_free };

struct MassScaling {
  MassKind kind{};
  std::vector<double> radii;
  std::vector<double> mass;   ///< beta^{-n}-weighted count, diam in [R, 2R)
  EstimateWithError exponent;
  double target = 0.0;        ///< conjectured exponent at (3/4, 43/32, 25/64)
};

/// Exact-enumeration route: walks or polygons of length <= max_length are
/// weighted by beta^{-n} and binned by Euclidean diameter.
MassScaling diameter_mass_scaling(MassKind kind, const std::vector<double>& radii,
                                  int max_length, double beta = 2.638);

}  // namespace sawlab::mcsaw
