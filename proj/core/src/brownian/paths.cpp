#include <algorithm>
#include <cmath>

#include "sawlab/brownian.hpp"
#include "sawlab/error.hpp"
#include "sawlab/parallel.hpp"

namespace sawlab::brownian {
namespace {

using conformal::SlitKind;
using conformal::SlitMap;

bool segment_meets(const SlitMap& m, Complex a, Complex b, double tol) {
  if (m.kind() == SlitKind::vertical_slit)
    return geom::segment_segment_distance(a, b, Complex(m.center(), 0.0),
                                          Complex(m.center(), m.size())) <=
           tol;
  return geom::point_segment_distance(m.center(), a, b) <= m.size() + tol;
}

}  // namespace

PlanarCurve excursion(double T, int N, Rng& rng) {
  if (N < 1) throw InvalidArgument("excursion: N must be >= 1");
  if (!(T > 0.0)) throw InvalidArgument("excursion: T must be > 0");
  PlanarCurve c;
  c.geometry = Geometry::half_plane;
  c.points.reserve(N + 1);
  c.times.reserve(N + 1);
  std::normal_distribution<double> gauss;
  const double sd = std::sqrt(T / N);
  double x = 0.0, u = 0.0, v = 0.0, w = 0.0;
  c.points.emplace_back(0.0, 0.0);
  c.times.push_back(0.0);
  for (int k = 1; k <= N; ++k) {
    x += sd * gauss(rng);
    u += sd * gauss(rng);
    v += sd * gauss(rng);
    w += sd * gauss(rng);
    c.points.emplace_back(x, std::sqrt(u * u + v * v + w * w));
    c.times.push_back(T * k / N);
  }
  return c;
}

ExcursionRun run_excursion(const SlitMap& m, Rng& rng,
                           const ExcursionRunConfig& cfg) {
  if (!(cfg.step_fraction > 0.0) || !(cfg.min_step > 0.0) ||
      !(cfg.escape_radius > 0.0))
    throw InvalidArgument("excursion run: parameters must be > 0");
  std::normal_distribution<double> gauss;
  double x = 0.0, u = 0.0, v = 0.0, w = 0.0;
  Complex z{};
  ExcursionRun out;
  while (out.steps < cfg.max_steps) {
    const double sd =
        std::max(cfg.step_fraction * m.distance_to_obstacle(z), cfg.min_step);
    x += sd * gauss(rng);
    u += sd * gauss(rng);
    v += sd * gauss(rng);
    w += sd * gauss(rng);
    const Complex next(x, std::sqrt(u * u + v * v + w * w));
    ++out.steps;
    if (segment_meets(m, z, next, cfg.min_step)) {
      out.hit = true;
      return out;
    }
    z = next;
    if (std::abs(z) > cfg.escape_radius) {
      out.escaped = true;
      return out;
    }
  }
  return out;
}

ExcursionTally excursion_tally(const SlitMap& m, std::size_t count,
                               std::uint64_t seed,
                               const ExcursionRunConfig& cfg) {
  if (count == 0) throw InvalidArgument("excursion tally: count must be > 0");
  const std::size_t chunks = std::min<std::size_t>(64, count);
  std::vector<ExcursionTally> part(chunks);
  parallel_for(chunks, [&](std::size_t p) {
    for (std::size_t i = p; i < count; i += chunks) {
      auto rng = make_rng(seed, i);
      const auto r = run_excursion(m, rng, cfg);
      ++part[p].runs;
      part[p].avoided += r.escaped;
      part[p].unresolved += !r.hit && !r.escaped;
    }
  });
  ExcursionTally t;
  for (const auto& p : part) {
    t.runs += p.runs;
    t.avoided += p.avoided;
    t.unresolved += p.unresolved;
  }
  return t;
}

EstimateWithError excursion_avoidance(const ExcursionTally& t) {
  auto e = stats::proportion(t.avoided, t.runs);
  e.window = "escape to the outer radius counts as avoidance";
  if (t.unresolved > 0) {
    e.flagged = true;
    e.note = std::to_string(t.unresolved) + " runs hit the step cap";
  }
  return e;
}

PlanarCurve rooted_loop(double t_dur, int N, Rng& rng) {
  if (!(t_dur > 0.0)) throw InvalidArgument("loop: duration must be > 0");
  if (N < 1) throw InvalidArgument("loop: N must be >= 1");
  std::normal_distribution<double> gauss;
  const double sd = std::sqrt(t_dur / N);
  std::vector<double> x(N + 1, 0.0), y(N + 1, 0.0);
  for (int k = 1; k <= N; ++k) {
    x[k] = x[k - 1] + sd * gauss(rng);
    y[k] = y[k - 1] + sd * gauss(rng);
  }
  PlanarCurve c;
  c.geometry = Geometry::plane;
  c.points.resize(N + 1);
  c.times.resize(N + 1);
  const double xn = x[N], yn = y[N];
  for (int k = 0; k <= N; ++k) {
    const double s = double(k) / N;
    c.points[k] = Complex(x[k] - s * xn, y[k] - s * yn);
    c.times[k] = t_dur * s;
  }
  c.points[N] = c.points[0];
  return c;
}

LoopDuration loop_duration_sampler(double t_min, double t_max, Rng& rng) {
  if (!(t_min > 0.0) || !(t_max > t_min))
    throw InvalidArgument("loop duration: need 0 < t_min < t_max");
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  LoopDuration d;
  d.duration = t_min * std::pow(t_max / t_min, u);
  d.weight = 1.0 / d.duration;
  return d;
}

}  // namespace sawlab::brownian
