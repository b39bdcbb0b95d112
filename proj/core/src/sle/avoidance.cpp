#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sawlab/error.hpp"
#include "sawlab/parallel.hpp"
#include "sawlab/sle.hpp"

namespace sawlab::sle {
namespace {

using conformal::RadialRestrictionMap;
using conformal::SlitKind;
using conformal::SlitMap;

// Mean length of segments with an endpoint within `reach` of the obstacle,
// or of all segments when none qualify.
template <class Dist>
double spacing_near(const PlanarCurve& c, double reach, Dist dist) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (std::min(dist(c.points[i - 1]), dist(c.points[i])) > reach) continue;
    sum += std::abs(c.points[i] - c.points[i - 1]);
    ++count;
  }
  return count ? sum / double(count) : c.mean_spacing();
}

double obstacle_extent(const SlitMap& m) {
  if (m.kind() == SlitKind::vertical_slit)
    return std::hypot(m.center(), m.size());
  return std::abs(m.center()) + m.size();
}

bool polyline_hits(const PlanarCurve& c, const SlitMap& m) {
  if (m.kind() == SlitKind::vertical_slit) {
    const Complex a(m.center(), 0.0), b(m.center(), m.size());
    return geom::polyline_segment_distance(c.points, a, b) == 0.0;
  }
  return geom::polyline_enters_disk(c.points, m.center(), m.size());
}

std::size_t check_count(std::size_t n) {
  if (n == 0) throw InvalidArgument("avoidance: ensemble must be nonempty");
  return n;
}

}  // namespace

AvoidanceOutcome classify_avoidance(const PlanarCurve& trace,
                                    const SlitMap& m) {
  if (trace.empty()) throw InvalidArgument("avoidance: empty trace");
  AvoidanceOutcome o;
  auto dist = [&](Complex z) { return m.distance_to_obstacle(z); };
  o.eps_test = 2.0 * spacing_near(trace, m.size(), dist);
  o.hit_polyline = polyline_hits(trace, m);
  o.hit_tube = o.hit_polyline;
  for (const Complex& z : trace.points)
    if (dist(z) <= o.eps_test) {
      o.hit_tube = true;
      break;
    }
  o.short_horizon = trace.max_modulus() < 5.0 * obstacle_extent(m);
  return o;
}

AvoidanceOutcome classify_avoidance(const PlanarCurve& trace,
                                    const RadialRestrictionMap& m) {
  if (trace.empty()) throw InvalidArgument("avoidance: empty trace");
  AvoidanceOutcome o;
  auto dist = [&](Complex z) { return m.distance_to_obstacle(z); };
  o.eps_test = 2.0 * spacing_near(trace, m.obstacle_radius(), dist);
  o.hit_polyline = geom::polyline_enters_disk(
      trace.points, m.obstacle_center(), m.obstacle_radius());
  o.hit_tube = o.hit_polyline;
  for (const Complex& z : trace.points)
    if (dist(z) <= o.eps_test) {
      o.hit_tube = true;
      break;
    }
  // The obstacle sits at distance 1 - |center| + radius from 0; the trace
  // should end well inside that.
  const double gap = std::abs(m.obstacle_center()) - m.obstacle_radius();
  o.short_horizon = std::abs(trace.points.back()) > gap / 5.0;
  return o;
}

void AvoidanceTally::add(const AvoidanceOutcome& o) {
  ++traces;
  avoided_polyline += !o.hit_polyline;
  avoided_tube += !o.hit_tube;
  short_horizon += o.short_horizon;
}

void AvoidanceTally::merge(const AvoidanceTally& other) {
  traces += other.traces;
  avoided_polyline += other.avoided_polyline;
  avoided_tube += other.avoided_tube;
  short_horizon += other.short_horizon;
}

AvoidanceEstimate summarize(const AvoidanceTally& t, double prediction) {
  AvoidanceEstimate e;
  e.prediction = prediction;
  e.primary = stats::proportion(t.avoided_polyline, t.traces);
  e.primary.window = "polyline criterion";
  e.corrected = stats::proportion(t.avoided_tube, t.traces);
  e.corrected.window = "tube of radius 2x local spacing";
  if (t.short_horizon > 0) {
    const std::string note = std::to_string(t.short_horizon) + " of " +
                             std::to_string(t.traces) +
                             " traces stayed within 5x the obstacle extent";
    for (auto* x : {&e.primary, &e.corrected}) {
      x->flagged = true;
      x->note = note;
    }
  }
  return e;
}

AvoidanceEstimate avoidance_probability(const std::vector<PlanarCurve>& traces,
                                        const std::vector<SlitMap>& obstacles,
                                        double a) {
  check_count(traces.size());
  AvoidanceTally tally;
  for (const auto& tr : traces) {
    AvoidanceOutcome all;
    for (const auto& m : obstacles) {
      const auto o = classify_avoidance(tr, m);
      all.hit_polyline |= o.hit_polyline;
      all.hit_tube |= o.hit_tube;
      all.short_horizon |= o.short_horizon;
    }
    tally.add(all);
  }
  double prediction = 1.0;
  if (obstacles.size() == 1)
    prediction = obstacles.front().restriction_probability(a);
  else if (obstacles.size() > 1)
    prediction = std::numeric_limits<double>::quiet_NaN();
  return summarize(tally, prediction);
}

AvoidanceEstimate radial_avoidance_probability(
    const std::vector<PlanarCurve>& traces, const RadialRestrictionMap& m) {
  check_count(traces.size());
  AvoidanceTally tally;
  for (const auto& tr : traces) tally.add(classify_avoidance(tr, m));
  return summarize(tally, conformal::radial_restriction_factors(m).probability);
}

namespace {

template <class Config, class Make, class Obstacle>
AvoidanceTally run_ensemble(const Config& c, const Obstacle& m, Make make) {
  check_count(c.count);
  constexpr std::size_t kChunks = 64;
  const std::size_t chunks = std::min(kChunks, c.count);
  std::vector<AvoidanceTally> part(chunks);
  parallel_for(chunks, [&](std::size_t p) {
    for (std::size_t i = p; i < c.count; i += chunks) {
      auto rng = make_rng(c.seed, i);
      part[p].add(classify_avoidance(make(rng), m));
    }
  });
  AvoidanceTally total;
  for (const auto& t : part) total.merge(t);
  return total;
}

}  // namespace

AvoidanceEstimate chordal_restriction_test(const ChordalEnsembleConfig& c,
                                           const SlitMap& m) {
  const auto grid = make_time_grid(c.grid, c.T, c.N, c.t_min);
  const auto tally = run_ensemble(c, m, [&](Rng& rng) {
    return chordal_trace(brownian_driving(c.kappa, grid, rng));
  });
  return summarize(tally, m.restriction_probability(5.0 / 8.0));
}

AvoidanceEstimate radial_restriction_test(const RadialEnsembleConfig& c,
                                          const RadialRestrictionMap& m) {
  const auto grid = make_time_grid(c.grid, c.T, c.N, c.t_min);
  const auto tally = run_ensemble(c, m, [&](Rng& rng) {
    return radial_trace(brownian_driving(c.kappa, grid, rng));
  });
  return summarize(tally, conformal::radial_restriction_factors(m).probability);
}

}  // namespace sawlab::sle
