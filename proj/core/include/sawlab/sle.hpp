#pragma once

// Discretized Loewner evolution: chordal, radial and full-plane SLE_kappa
// traces, and restriction/avoidance estimates from trace ensembles.

#include <cstdint>
#include <vector>

#include "sawlab/conformal.hpp"
#include "sawlab/curve.hpp"
#include "sawlab/rng.hpp"
#include "sawlab/stats.hpp"

namespace sawlab::sle {

/// Spacing of the capacity-time grid.
///   uniform:   t_k = T k / N
///   quadratic: t_k = T (k / N)^2
///   geometric: t_0 = 0, t_k = t_min (T / t_min)^{(k-1)/(N-1)}, k >= 1
enum class GridKind { uniform, quadratic, geometric };

std::vector<double> make_time_grid(GridKind kind, double T, int N,
                                   double t_min = 1e-6);

struct DrivingPath {
  double kappa = 8.0 / 3.0;
  std::vector<double> times;   ///< increasing, times[0] is the start time
  std::vector<double> values;  ///< W at each time
};

/// W_t = w0 + B_{kappa (t - t_0)} sampled on `times`.
DrivingPath brownian_driving(double kappa, std::vector<double> times, Rng& rng,
                             double w0 = 0.0);

/// Trace of the chordal Loewner chain driven by `path`, held constant at
/// W(t_k) on (t_{k-1}, t_k]. Point k is the image of the k-th slit tip
/// under the inverse maps of steps k-1, ..., 1. Points carry time stamps.
PlanarCurve chordal_trace(const DrivingPath& path);

/// Convenience: Brownian driving on the requested grid.
PlanarCurve chordal_trace(double kappa, double T, int N, Rng& rng,
                          GridKind grid = GridKind::uniform);

/// g_T(z) for the discretized chordal chain, z in the closed upper
/// half-plane off the hull.
Complex chordal_forward_map(const DrivingPath& path, Complex z);

/// Half-plane capacity of the discretized hull at the final time, from a
/// trapezoidal contour integral of g_T(z) - z on |z| = radius (upper half
/// evaluated, lower half by reflection).
double chordal_capacity(const DrivingPath& path, double radius,
                        int nodes = 4096);

/// Radial trace in the unit disk from e^{iW_0} toward 0: per step, rotate by
/// e^{-iW}, apply the radial slit map of log-capacity delta, rotate back.
PlanarCurve radial_trace(const DrivingPath& path);
PlanarCurve radial_trace(double kappa, double T, int N, Rng& rng,
                         GridKind grid = GridKind::uniform, double w0 = 0.0);

/// g_T(z) for the discretized radial chain; g_T(0) = 0, g_T'(0) = e^T.
Complex radial_forward_map(const DrivingPath& path, Complex z);

/// Full-plane trace on [K, T] (K < 0 < T or T = 0). W_0 is uniform on
/// [0, 2 pi) and the Brownian driving is run backward and forward from 0.
/// Uses gamma(t) = e^K / conj(Gamma(t - K)), Gamma the interior radial
/// trace for the same driving, which corresponds to the initial condition
/// g_K(z) = e^{-K} z.
PlanarCurve full_plane_trace(double kappa, double K, double T, int N,
                             Rng& rng);

/// Avoidance classification of one trace.
struct AvoidanceOutcome {
  bool hit_polyline = false;  ///< polyline meets the obstacle
  bool hit_tube = false;      ///< some point within eps_test of the obstacle
  double eps_test = 0.0;
  bool short_horizon = false; ///< trace never got far from the obstacle
};

/// Obstacle-agnostic geometry hooks.
AvoidanceOutcome classify_avoidance(const PlanarCurve& trace,
                                    const conformal::SlitMap& obstacle);
AvoidanceOutcome classify_avoidance(const PlanarCurve& trace,
                                    const conformal::RadialRestrictionMap& m);

/// Running ensemble tally.
struct AvoidanceTally {
  std::size_t traces = 0;
  std::size_t avoided_polyline = 0;
  std::size_t avoided_tube = 0;
  std::size_t short_horizon = 0;

  void add(const AvoidanceOutcome& o);
  void merge(const AvoidanceTally& other);
};

struct AvoidanceEstimate {
  EstimateWithError primary;    ///< polyline criterion
  EstimateWithError corrected;  ///< tube criterion
  double prediction = 0.0;
};

AvoidanceEstimate summarize(const AvoidanceTally& tally, double prediction);

/// Estimates over a stored ensemble. With no obstacle the probability is 1.
AvoidanceEstimate avoidance_probability(const std::vector<PlanarCurve>& traces,
                                        const std::vector<conformal::SlitMap>&
                                            obstacles,
                                        double a = 5.0 / 8.0);
AvoidanceEstimate radial_avoidance_probability(
    const std::vector<PlanarCurve>& traces,
    const conformal::RadialRestrictionMap& m);

/// Streaming ensemble runs: traces are generated, classified and dropped.
struct ChordalEnsembleConfig {
  double kappa = 8.0 / 3.0;
  double T = 16.0;
  int N = 1500;
  GridKind grid = GridKind::geometric;
  double t_min = 1e-4;
  std::size_t count = 10000;
  std::uint64_t seed = 1;
};

AvoidanceEstimate chordal_restriction_test(const ChordalEnsembleConfig& c,
                                           const conformal::SlitMap& obstacle);

struct RadialEnsembleConfig {
  double kappa = 8.0 / 3.0;
  double T = 6.0;
  int N = 1500;
  GridKind grid = GridKind::geometric;
  double t_min = 1e-4;
  std::size_t count = 10000;
  std::uint64_t seed = 1;
};

AvoidanceEstimate radial_restriction_test(
    const RadialEnsembleConfig& c, const conformal::RadialRestrictionMap& m);

/// Minimum distance between samples i, j with |t_i - t_j| > frac * T.
double simplicity_gap(const PlanarCurve& trace, double frac = 0.1);

}  // namespace sawlab::sle
