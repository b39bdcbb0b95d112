#include <algorithm>
#include <cmath>
#include <numbers>

#include "raster.hpp"
#include "sawlab/brownian.hpp"
#include "sawlab/error.hpp"
#include "sawlab/parallel.hpp"

namespace sawlab::brownian {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Cylinder {
  double u0;   // Re w at column 0
  double du;   // column width
  double dv;   // row height, rows * dv = 2 pi
  int cols, rows;
  std::vector<std::uint8_t> wall;

  Cylinder(double lo, double hi, double cell) {
    rows = std::max(8, int(std::lround(kTwoPi / cell)));
    dv = kTwoPi / rows;
    du = cell;
    u0 = lo;
    cols = int(std::ceil((hi - lo) / du)) + 1;
    wall.assign(std::size_t(cols) * rows, 0);
  }

  void mark(std::int64_t c, std::int64_t r) {
    if (c < 0 || c >= cols) return;
    r %= rows;
    if (r < 0) r += rows;
    wall[std::size_t(r) * cols + c] = 1;
  }

  // Whether column 0 reaches the last column through free cells, with
  // 4-neighbours and periodic rows.
  bool open() const {
    std::vector<std::uint8_t> seen(wall.size(), 0);
    std::vector<int> stack;
    for (int r = 0; r < rows; ++r) {
      const int s = r * cols;
      if (!wall[s]) {
        seen[s] = 1;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      const int c = s % cols, r = s / cols;
      if (c == cols - 1) return true;
      const int nb[4] = {c + 1 < cols ? s + 1 : -1, c > 0 ? s - 1 : -1,
                         ((r + 1) % rows) * cols + c,
                         ((r + rows - 1) % rows) * cols + c};
      for (int n : nb)
        if (n >= 0 && !wall[n] && !seen[n]) {
          seen[n] = 1;
          stack.push_back(n);
        }
    }
    return false;
  }
};

// One path in log coordinates from Re w = a to Re w = -a; returns false if
// it dips below a - depth.
bool run_path(double a, double depth, double sd, Cylinder& cyl, Rng& rng,
              std::vector<Complex>* keep) {
  std::normal_distribution<double> gauss;
  double u = a;
  double v = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
  auto cu = [&](double x) { return (x - cyl.u0) / cyl.du; };
  auto cv = [&](double y) { return y / cyl.dv; };
  auto mark = [&](std::int64_t c, std::int64_t r) { cyl.mark(c, r); };
  mark(std::int64_t(std::floor(cu(u))), std::int64_t(std::floor(cv(v))));
  if (keep) keep->push_back(std::exp(Complex(u, v)));
  while (u < -a) {
    const double nu = u + sd * gauss(rng);
    double nv = v + sd * gauss(rng);
    detail::supercover(cu(u), cv(v), cu(nu), cv(nv), mark);
    // Keep v bounded; the raster is periodic in rows.
    if (nv >= kTwoPi || nv < 0.0) {
      const double shift = kTwoPi * std::floor(nv / kTwoPi);
      nv -= shift;
    }
    u = nu;
    v = nv;
    if (keep) keep->push_back(std::exp(Complex(u, v)));
    if (u < a - depth) return false;
  }
  return true;
}

}  // namespace

PairTrial non_disconnection_trial(double eps, Rng& rng,
                                  const NonDisconnectionConfig& cfg) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw InvalidArgument("non-disconnection: eps must be in (0, 1)");
  if (!(cfg.cell > 0.0) || !(cfg.step_ratio > 0.0) || !(cfg.max_depth > 0.0))
    throw InvalidArgument("non-disconnection: bad configuration");
  const double a = std::log(eps);
  Cylinder cyl(a - cfg.max_depth - 2.0 * cfg.cell, -a + 2.0 * cfg.cell,
               cfg.cell);
  const double sd = cfg.step_ratio * cfg.cell;
  PairTrial t;
  t.pair.eps = eps;
  std::vector<Complex> p1, p2;
  const bool ok1 = run_path(a, cfg.max_depth, sd, cyl, rng,
                            cfg.keep_paths ? &p1 : nullptr);
  const bool ok2 = ok1 && run_path(a, cfg.max_depth, sd, cyl, rng,
                                   cfg.keep_paths ? &p2 : nullptr);
  if (cfg.keep_paths) {
    t.pair.first.points = std::move(p1);
    t.pair.second.points = std::move(p2);
  }
  if (!ok1 || !ok2) {
    t.depth_cut = true;
    return t;
  }
  t.accepted = cyl.open();
  return t;
}

NonDisconnectionEstimate non_disconnection_probability(
    double eps, std::size_t trials, std::uint64_t seed,
    const NonDisconnectionConfig& cfg) {
  if (trials == 0) throw InvalidArgument("non-disconnection: no trials");
  const std::size_t chunks = std::min<std::size_t>(64, trials);
  std::vector<NonDisconnectionEstimate> part(chunks);
  NonDisconnectionConfig quiet = cfg;
  quiet.keep_paths = false;
  parallel_for(chunks, [&](std::size_t p) {
    for (std::size_t i = p; i < trials; i += chunks) {
      auto rng = make_rng(seed, i);
      const auto t = non_disconnection_trial(eps, rng, quiet);
      ++part[p].trials;
      part[p].accepted += t.accepted;
      part[p].depth_cuts += t.depth_cut;
    }
  });
  NonDisconnectionEstimate out;
  for (const auto& p : part) {
    out.trials += p.trials;
    out.accepted += p.accepted;
    out.depth_cuts += p.depth_cuts;
  }
  out.probability = stats::proportion(out.accepted, out.trials);
  out.probability.window = "eps=" + std::to_string(eps);
  return out;
}

AcceptedPair non_disconnecting_pair(double eps, std::size_t max_trials,
                                    Rng& rng,
                                    const NonDisconnectionConfig& cfg) {
  if (max_trials == 0) throw InvalidArgument("non-disconnection: no trials");
  NonDisconnectionConfig keep = cfg;
  keep.keep_paths = true;
  AcceptedPair out;
  bool found = false;
  for (std::size_t i = 0; i < max_trials && !found; ++i) {
    auto t = non_disconnection_trial(eps, rng, keep);
    ++out.estimate.trials;
    out.estimate.depth_cuts += t.depth_cut;
    if (t.accepted) {
      ++out.estimate.accepted;
      out.pair = std::move(t.pair);
      found = true;
    }
  }
  out.estimate.probability =
      stats::proportion(out.estimate.accepted, out.estimate.trials);
  // Upper confidence bound on the rate after k failures is about 3/k.
  const double bound = found ? 1.0 : 3.0 / double(out.estimate.trials);
  if (bound < 1e-4)
    throw ResourceLimit("non-disconnection: acceptance rate below 1e-4; "
                        "use a larger eps");
  return out;
}

}  // namespace sawlab::brownian
