#pragma once

// Depth-first traversal of the half-space walks Upsilon_n, n <= n_max.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "grid.hpp"
#include "sawlab/parallel.hpp"

namespace sawlab::lattice::detail {

struct HalfSpacePath {
  std::vector<Direction> dirs;
  std::vector<Coord> xs;  // first coordinate of points 0..depth
};

template <class Visitor>
class HalfSpaceDfs {
 public:
  HalfSpaceDfs(int d, int n_max, bool symmetric, Visitor& v)
      : grid_(d, n_max), n_(n_max), symmetric_(symmetric), v_(v) {
    path_.xs.push_back(0);
  }

  /// Visits nodes down to depth `stop`. Nodes at that depth which could
  /// still grow are handed to `on_stop` instead of being expanded.
  template <class OnStop>
  void run(int stop, OnStop&& on_stop) {
    stop_ = stop;
    descend(grid_.origin, 0, 1, false, on_stop);
  }

  /// Replays a prefix and continues to full depth from it.
  void resume(const std::vector<Direction>& prefix, std::uint64_t w,
              bool turned) {
    std::vector<std::int64_t> sites;
    std::int64_t pos = grid_.origin;
    for (auto dir : prefix) {
      pos += grid_.offset[dir];
      grid_.occupied[pos] = 1;
      sites.push_back(pos);
      path_.dirs.push_back(dir);
      path_.xs.push_back(path_.xs.back() + step_dx(dir));
    }
    stop_ = n_ + 1;
    auto none = [](const HalfSpacePath&, std::uint64_t, bool) {};
    expand(pos, static_cast<int>(prefix.size()), w, turned, none);
    for (auto s : sites) grid_.occupied[s] = 0;
    path_.dirs.clear();
    path_.xs.resize(1);
  }

 private:
  static int step_dx(Direction dir) {
    return dir == kEast ? 1 : (dir == kWest ? -1 : 0);
  }

  template <class OnStop>
  void descend(std::int64_t pos, int depth, std::uint64_t w, bool turned,
               OnStop& on_stop) {
    if (depth > 0) v_(path_, w);
    if (depth == stop_ && depth < n_) {
      on_stop(path_, w, turned);
      return;
    }
    expand(pos, depth, w, turned, on_stop);
  }

  template <class OnStop>
  void expand(std::int64_t pos, int depth, std::uint64_t w, bool turned,
              OnStop& on_stop) {
    if (depth == n_) return;
    const int d = grid_.dim;
    for (int k = 0; k < 2 * d; ++k) {
      const auto dir = static_cast<Direction>(k);
      std::uint64_t wk = w;
      bool tk = turned;
      if (symmetric_ && !turned && k >= 2) {
        if (dir != kNorth) continue;
        wk = w * 2 * (d - 1);
        tk = true;
      }
      const Coord x = path_.xs.back() + step_dx(dir);
      if (x < 1) continue;
      const std::int64_t next = pos + grid_.offset[k];
      if (grid_.occupied[next]) continue;
      grid_.occupied[next] = 1;
      path_.dirs.push_back(dir);
      path_.xs.push_back(x);
      descend(next, depth + 1, wk, tk, on_stop);
      path_.xs.pop_back();
      path_.dirs.pop_back();
      grid_.occupied[next] = 0;
    }
  }

  Grid grid_;
  int n_;
  bool symmetric_;
  Visitor& v_;
  HalfSpacePath path_;
  int stop_ = 0;
};

/// Runs `make()`-constructed visitors over Upsilon_1..Upsilon_n_max and
/// returns them; the caller merges. Deterministic for any thread count.
template <class Make>
auto traverse_half_space(int n_max, int d, bool symmetric, Make make) {
  using V = decltype(make());
  struct Task {
    std::vector<Direction> dirs;
    std::uint64_t w;
    bool turned;
  };
  std::vector<V> out;
  out.push_back(make());
  std::vector<Task> tasks;
  {
    HalfSpaceDfs<V> head(d, n_max, symmetric, out.front());
    head.run(std::min(n_max, 6),
             [&](const HalfSpacePath& p, std::uint64_t w, bool turned) {
               tasks.push_back({p.dirs, w, turned});
             });
  }
  if (tasks.empty()) return out;
  const std::size_t n_chunks = std::min<std::size_t>(tasks.size(), 64);
  std::vector<V> partial;
  partial.reserve(n_chunks);
  for (std::size_t c = 0; c < n_chunks; ++c) partial.push_back(make());
  parallel_for(n_chunks, [&](std::size_t c) {
    HalfSpaceDfs<V> dfs(d, n_max, symmetric, partial[c]);
    for (std::size_t t = c; t < tasks.size(); t += n_chunks)
      dfs.resume(tasks[t].dirs, tasks[t].w, tasks[t].turned);
  });
  for (auto& p : partial) out.push_back(std::move(p));
  return out;
}

/// First renewal time of the path (0 if none) and whether the path is a
/// bridge under each convention.
struct RenewalScan {
  int first_renewal = 0;
  bool bridge = false;
  bool bridge_first_step = false;
};

inline RenewalScan scan_renewals(const std::vector<Coord>& xs,
                                 std::vector<Coord>& suffix_min) {
  const int n = static_cast<int>(xs.size()) - 1;
  RenewalScan r;
  suffix_min.resize(n + 1);
  suffix_min[n] = xs[n];
  for (int j = n - 1; j >= 1; --j)
    suffix_min[j] = std::min(suffix_min[j + 1], xs[j]);
  Coord prefix_max = xs[0];
  for (int j = 1; j < n; ++j) {
    prefix_max = std::max(prefix_max, xs[j]);
    if (xs[j] == prefix_max && xs[j] < suffix_min[j + 1]) {
      r.first_renewal = j;
      break;
    }
  }
  const Coord top = *std::max_element(xs.begin() + 1, xs.end());
  r.bridge = xs[n] == top;
  r.bridge_first_step = xs[n] == top && (n < 2 || suffix_min[2] > xs[1]);
  return r;
}

/// Root of sum_k lambda[k] beta^{-k} = 1 on [1, 2d]; lambda[0] is ignored.
double solve_kesten(const std::vector<std::uint64_t>& lambda, int d);

}  // namespace sawlab::lattice::detail
