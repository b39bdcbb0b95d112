#pragma once

// Exact combinatorics of self-avoiding walks and polygons on Z^d, the
// bridge / renewal decomposition of half-space walks, Kesten's relation and
// the samplers built on it.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sawlab/rng.hpp"

namespace sawlab::lattice {

using Coord = std::int32_t;

/// Step direction on Z^d: axis = dir / 2, positive for even dir.
/// In d = 2: 0 = E, 1 = W, 2 = N, 3 = S.
using Direction = std::uint8_t;

inline constexpr Direction kEast = 0;
inline constexpr Direction kWest = 1;
inline constexpr Direction kNorth = 2;
inline constexpr Direction kSouth = 3;

class LatticePoint {
 public:
  explicit LatticePoint(std::vector<Coord> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  Coord operator[](int axis) const { return coords_[axis]; }
  std::span<const Coord> coords() const { return coords_; }

  auto operator<=>(const LatticePoint&) const = default;

 private:
  std::vector<Coord> coords_;
};

enum class WalkKind { open, polygon };

/// Nearest-neighbour lattice path. Open walks visit distinct sites; polygons
/// are distinct except that the last point repeats the first.
class Walk {
 public:
  /// `flat` holds (length + 1) * dim coordinates, point-major. Throws
  /// InvalidArgument if the self-avoidance or closure invariant fails.
  Walk(int dim, std::vector<Coord> flat, WalkKind kind = WalkKind::open);

  /// Walk from the origin following `steps`.
  static Walk from_directions(int dim, std::span<const Direction> steps,
                              WalkKind kind = WalkKind::open);

  int dim() const { return dim_; }
  WalkKind kind() const { return kind_; }
  std::size_t length() const { return flat_.size() / dim_ - 1; }
  std::size_t num_points() const { return flat_.size() / dim_; }

  Coord coord(std::size_t i, int axis) const { return flat_[i * dim_ + axis]; }
  LatticePoint point(std::size_t i) const;
  std::span<const Coord> flat() const { return flat_; }
  std::vector<Direction> directions() const;

  /// pi_1(w_j) > pi_1(w_0) for every j >= 1.
  bool in_half_space() const;

  bool operator==(const Walk&) const = default;

 private:
  int dim_;
  std::vector<Coord> flat_;
  WalkKind kind_;
};

/// Enumeration budgets. Requests beyond them throw ResourceLimit.
struct EnumerationLimits {
  int saw_cap = 20;
  int half_space_cap = 24;
};

/// C_0..C_n_max in one depth-first pass.
std::vector<std::uint64_t> saw_counts(int n_max, int dim = 2,
                                      const EnumerationLimits& limits = {});

/// Number of n-step SAWs from the origin.
std::uint64_t count_saws(int n, int dim = 2,
                         const EnumerationLimits& limits = {});

struct SapCount {
  std::uint64_t rooted = 0;   ///< closed SAWs of length n2 from the origin
  std::uint64_t classes = 0;  ///< rooted / (2 * n2): translation classes
};

/// Self-avoiding polygons of (even) length n2 on Z^2.
SapCount count_saps(int n2, const EnumerationLimits& limits = {});

/// upsilon_n: n-step walks from 0 with pi_1 > 0 after the first step.
std::uint64_t count_half_space(int n, int dim = 2,
                               const EnumerationLimits& limits = {});

/// Renewal times j in {1..n-1} of a half-space walk, ascending.
std::vector<int> renewal_times(const Walk& w);

enum class BridgeConvention {
  standard,       ///< pi1 w_0 < pi1 w_j <= pi1 w_n, j = 1..n
  first_step_strict,  ///< pi1 w_1 < pi1 w_j <= pi1 w_n, j = 2..n
};

bool is_bridge(const Walk& w,
               BridgeConvention convention = BridgeConvention::standard);

/// Statistics gathered in one pass over all half-space walks of length
/// <= n_max. Index n of each vector refers to n-step walks.
struct HalfSpaceCensus {
  std::vector<std::uint64_t> half_counts;        ///< upsilon_n
  std::vector<std::uint64_t> irreducible;        ///< lambda_n (standard)
  std::vector<std::uint64_t> irreducible_first_step;  ///< lambda_n (first_step_strict)
  std::vector<std::uint64_t> no_renewal;         ///< walks with no renewal time
  /// first_renewal[n][k] = #{w in Upsilon_n : least renewal time == k}.
  std::vector<std::vector<std::uint64_t>> first_renewal;
};

HalfSpaceCensus half_space_census(int n_max, int dim = 2,
                                  const EnumerationLimits& limits = {});

/// lambda_k: irreducible k-step bridges from the origin.
std::uint64_t count_irreducible_bridges(
    int k, int dim = 2,
    BridgeConvention convention = BridgeConvention::standard,
    const EnumerationLimits& limits = {});

/// Exact counts C_n, upsilon_n, lambda_n for n = 1..K.
class BridgeTable {
 public:
  static BridgeTable build(int K, int dim = 2,
                           const EnumerationLimits& limits = {});

  int K() const { return K_; }
  int dim() const { return dim_; }
  std::uint64_t saw_count(int n) const { return saw_counts_.at(n); }
  std::uint64_t half_count(int n) const { return half_counts_.at(n); }
  std::uint64_t irreducible_count(int n) const { return irreducible_.at(n); }
  /// Root of the truncated Kesten sum at the full truncation K.
  double beta_estimate() const { return beta_estimate_; }

 private:
  int K_ = 0;
  int dim_ = 2;
  std::vector<std::uint64_t> saw_counts_;   // index 0..K
  std::vector<std::uint64_t> half_counts_;  // index 0..K
  std::vector<std::uint64_t> irreducible_;  // index 0..K, [0] = 0
  double beta_estimate_ = 0.0;
};

/// S_K(beta) = sum_{k<=K} lambda_k beta^{-k}.
double kesten_partial_sum(const BridgeTable& table, int K, double beta);

/// beta_K solving S_K(beta) = 1.
double kesten_beta(const BridgeTable& table, int K);

/// Infinite half-space SAW by concatenating i.i.d. irreducible bridges with
/// length law w_k proportional to lambda_k beta^{-k}, k <= K.
class HalfSpaceSampler {
 public:
  /// beta defaults to table.beta_estimate().
  explicit HalfSpaceSampler(const BridgeTable& table,
                            std::optional<double> beta = std::nullopt);

  int K() const { return K_; }
  int dim() const { return dim_; }
  double beta() const { return beta_; }
  /// weights()[k - 1] = w_k.
  std::span<const double> weights() const { return weights_; }
  std::size_t bridge_count(int k) const;

  int draw_length(Rng& rng) const;
  std::span<const Direction> draw_bridge(int k, Rng& rng) const;

 private:
  int K_;
  int dim_;
  double beta_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::vector<std::vector<Direction>> bridges_;  // [k] -> k dirs per bridge
};

/// Concatenates bridges until the walk has at least `steps` steps.
Walk sample_half_space_saw(int steps, const HalfSpaceSampler& sampler,
                           Rng& rng);

/// Bridge lengths used by one draw (same draw sequence as
/// sample_half_space_saw for an identically seeded rng).
std::vector<int> sample_bridge_lengths(int steps,
                                       const HalfSpaceSampler& sampler,
                                       Rng& rng);

/// Sampler for the measure on all half-space walks giving weight a^n to each
/// n-step walk, through the unique factorisation into irreducible bridges
/// followed by a renewal-free tail. Exact on walks whose pieces all have
/// length <= K.
class WeightedHalfSpaceSampler {
 public:
  explicit WeightedHalfSpaceSampler(int K, int dim = 2,
                                    const EnumerationLimits& limits = {});

  int K() const { return K_; }
  /// Supremum of admissible weights, 1 / beta_K.
  double critical_weight() const { return critical_weight_; }
  Walk sample(double a, Rng& rng) const;

 private:
  int K_;
  int dim_;
  double critical_weight_;
  std::vector<std::vector<Direction>> bridges_;  // irreducible, by length
  std::vector<std::vector<Direction>> tails_;    // renewal-free, by length
};

/// Throws InvalidArgument unless 0 < a < sampler.critical_weight().
Walk sample_weighted_half_space(double a, const WeightedHalfSpaceSampler& s,
                                Rng& rng);

}  // namespace sawlab::lattice
