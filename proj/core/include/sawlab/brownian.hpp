#pragma once

// Brownian excursions and loops, hull filling on a grid, frontiers,
// box-counting dimension, and non-disconnecting pairs of paths.

#include <cstdint>
#include <string>
#include <vector>

#include "sawlab/conformal.hpp"
#include "sawlab/curve.hpp"
#include "sawlab/rng.hpp"
#include "sawlab/stats.hpp"

namespace sawlab::brownian {

/// Half-plane excursion from 0 on a uniform grid of N steps over [0, T]:
/// x is a standard BM, y the norm of an independent 3-d BM.
PlanarCurve excursion(double T, int N, Rng& rng);

/// Adaptive excursion run against one obstacle. Steps are Gaussian with
/// variance (step_fraction * distance to obstacle)^2, floored at
/// min_step^2, so positions are exact samples at adapted times. The run
/// ends on a hit (segment meets the obstacle or comes within min_step) or
/// on escape past escape_radius.
struct ExcursionRunConfig {
  double step_fraction = 0.2;
  double min_step = 1e-4;
  double escape_radius = 1e3;
  std::size_t max_steps = 10'000'000;
};

struct ExcursionRun {
  bool hit = false;
  bool escaped = false;
  std::size_t steps = 0;
};

ExcursionRun run_excursion(const conformal::SlitMap& obstacle, Rng& rng,
                           const ExcursionRunConfig& config = {});

struct ExcursionTally {
  std::size_t runs = 0;
  std::size_t avoided = 0;
  std::size_t unresolved = 0;  ///< hit neither the obstacle nor the escape radius
};

/// `count` independent runs, run i seeded from make_rng(seed, i).
ExcursionTally excursion_tally(const conformal::SlitMap& obstacle,
                               std::size_t count, std::uint64_t seed,
                               const ExcursionRunConfig& config = {});

/// Avoidance fraction with its binomial error; prediction Phi_A'(0).
EstimateWithError excursion_avoidance(const ExcursionTally& tally);

/// Brownian loop of duration t_dur rooted at 0: B_t - (t / t_dur) B_{t_dur}
/// per coordinate on N uniform steps. First and last points are both 0.
PlanarCurve rooted_loop(double t_dur, int N, Rng& rng);

/// Duration drawn from the density proportional to 1/t on [t_min, t_max],
/// with the unrooted-loop weight 1/t.
struct LoopDuration {
  double duration = 0.0;
  double weight = 0.0;
};
LoopDuration loop_duration_sampler(double t_min, double t_max, Rng& rng);

/// Occupancy grid with square cells of side `resolution`. Cell (i, j)
/// covers [x0 + i r, x0 + (i+1) r) x [y0 + j r, y0 + (j+1) r).
class GridRegion {
 public:
  GridRegion() = default;
  GridRegion(double resolution, double x0, double y0, int width, int height);

  double resolution() const { return res_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  int width() const { return w_; }
  int height() const { return h_; }

  bool filled(int i, int j) const;
  void set(int i, int j, bool v = true);
  bool contains(Complex z) const;
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  /// Centre of cell (i, j).
  Complex cell_center(int i, int j) const;

  /// Rows as "y:start+len,start+len;" runs of filled cells.
  std::string to_rle() const;

  /// Diagnostics set by hull_fill and frontier.
  bool flagged = false;
  std::string note;

 private:
  double res_ = 1.0, x0_ = 0.0, y0_ = 0.0;
  int w_ = 0, h_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// Rasterizes every segment of every curve (all cells a segment passes
/// through), then fills: the hull is the complement of the 4-connected
/// exterior component.
GridRegion hull_fill(const std::vector<PlanarCurve>& curves, double resolution);

/// Default resolution: diameter / 512.
double default_resolution(const std::vector<PlanarCurve>& curves);

/// Outer boundary of the largest 4-connected component, traced along cell
/// edges counterclockwise. Vertices are cell corners; the curve is closed
/// (last point equals first).
struct FrontierResult {
  PlanarCurve curve;
  bool flagged = false;
  std::string note;
};
FrontierResult frontier(const GridRegion& region);

/// Box sizes diameter * 2^-k for k = k_min .. k_max.
std::vector<double> dyadic_scales(double diameter, int k_min, int k_max);

/// Box-counting dimension of a polyline: segments are subdivided below the
/// smallest box size and N(eps) counts occupied boxes. Requires >= 4 scales
/// spanning a factor >= 100.
EstimateWithError box_dimension(const PlanarCurve& curve,
                                const std::vector<double>& scales);

/// Several curves: the fit uses the mean of log N(eps) over curves, with the
/// slope error from the spread of per-curve slopes.
EstimateWithError box_dimension(const std::vector<PlanarCurve>& curves,
                                const std::vector<double>& scales);

/// Calibration mode: N(eps) counts boxes containing a filled cell centre.
EstimateWithError box_dimension(const GridRegion& region,
                                const std::vector<double>& scales);

/// Two Brownian paths from 0, each kept from its first hit of |z| = eps to
/// its first hit of |z| = 1/eps. Simulated in w = log z, where the paths are
/// time-changed planar BMs on the cylinder R x (R / 2 pi Z).
struct PathPair {
  PlanarCurve first, second;
  double eps = 0.0;
  Complex start{};
};

struct NonDisconnectionConfig {
  double cell = 0.05;        ///< grid cell in log coordinates
  double step_ratio = 0.5;   ///< BM step sd / cell
  double max_depth = 15.0;   ///< dips below log eps - max_depth count as disconnecting
  bool keep_paths = false;
};

struct PairTrial {
  bool accepted = false;  ///< origin in the unbounded complementary component
  bool depth_cut = false;
  PathPair pair;          ///< filled when keep_paths is set
};

PairTrial non_disconnection_trial(double eps, Rng& rng,
                                  const NonDisconnectionConfig& config = {});

struct NonDisconnectionEstimate {
  EstimateWithError probability;
  std::size_t trials = 0;
  std::size_t accepted = 0;
  std::size_t depth_cuts = 0;
};

/// P(V_eps) from `trials` runs seeded make_rng(seed, i).
NonDisconnectionEstimate non_disconnection_probability(
    double eps, std::size_t trials, std::uint64_t seed,
    const NonDisconnectionConfig& config = {});

/// Rejection sampler: the first accepted pair within max_trials, plus the
/// acceptance-rate estimate. Throws ResourceLimit when the rate falls below
/// 1e-4.
struct AcceptedPair {
  PathPair pair;
  NonDisconnectionEstimate estimate;
};
AcceptedPair non_disconnecting_pair(double eps, std::size_t max_trials,
                                    Rng& rng,
                                    const NonDisconnectionConfig& config = {});

}  // namespace sawlab::brownian
