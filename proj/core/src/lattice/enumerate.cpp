#include <algorithm>
#include <string>

#include "grid.hpp"
#include "sawlab/error.hpp"
#include "sawlab/lattice.hpp"
#include "sawlab/parallel.hpp"

namespace sawlab::lattice {
namespace {

using detail::Grid;

// Symmetry reduction: the first step is +e1 (weight 2d) and the first step
// leaving the e1 axis is +e2 (weight 2(d-1)).
struct Prefix {
  std::vector<Direction> dirs;
  std::uint64_t weight;
};

struct SawCounter {
  Grid grid;
  int n;
  std::vector<std::uint8_t> near_origin;
  std::vector<std::uint64_t> counts;    // by length
  std::vector<std::uint64_t> closable;  // by length of the open walk

  SawCounter(int d, int n_max)
      : grid(d, n_max),
        n(n_max),
        near_origin(grid.occupied.size(), 0),
        counts(n_max + 1, 0),
        closable(n_max + 1, 0) {
    for (auto off : grid.offset) near_origin[grid.origin + off] = 1;
  }

  void visit(std::int64_t pos, int depth, std::uint64_t w) {
    auto& occ = grid.occupied;
    const int ndir = 2 * grid.dim;
    if (depth == n - 1) {
      for (int k = 0; k < ndir; ++k) {
        const std::int64_t next = pos + grid.offset[k];
        if (occ[next]) continue;
        counts[n] += w;
        if (near_origin[next]) closable[n] += w;
      }
      return;
    }
    for (int k = 0; k < ndir; ++k) {
      const std::int64_t next = pos + grid.offset[k];
      if (occ[next]) continue;
      occ[next] = 1;
      counts[depth + 1] += w;
      if (near_origin[next]) closable[depth + 1] += w;
      visit(next, depth + 1, w);
      occ[next] = 0;
    }
  }
};

// Expands the reduced tree to `split` steps. Walks up to that depth are
// tallied into `counter`; unfinished subtrees are returned as tasks.
std::vector<Prefix> split_tree(SawCounter& counter, int split) {
  const int d = counter.grid.dim;
  const int n = counter.n;
  std::vector<Prefix> tasks;
  auto& g = counter.grid;
  std::vector<Direction> path;

  auto rec = [&](auto&& self, std::int64_t pos, int depth,
                 std::uint64_t w) -> void {
    if (depth >= split) {
      if (depth < n) tasks.push_back({path, w});
      return;
    }
    for (int k = 0; k < 2 * d; ++k) {
      const std::int64_t next = pos + g.offset[k];
      if (g.occupied[next]) continue;
      g.occupied[next] = 1;
      path.push_back(static_cast<Direction>(k));
      counter.counts[depth + 1] += w;
      if (counter.near_origin[next]) counter.closable[depth + 1] += w;
      self(self, next, depth + 1, w);
      path.pop_back();
      g.occupied[next] = 0;
    }
  };

  const std::uint64_t w_straight = 2 * d;
  const std::uint64_t w_turned = w_straight * 2 * (d - 1);
  std::int64_t pos = g.origin;
  std::vector<std::int64_t> straight;
  for (int m = 1; m <= n; ++m) {
    pos += g.offset[kEast];
    g.occupied[pos] = 1;
    straight.push_back(pos);
    path.push_back(kEast);
    counter.counts[m] += w_straight;
    if (m == n) break;
    const std::int64_t turn = pos + g.offset[kNorth];
    g.occupied[turn] = 1;
    path.push_back(kNorth);
    counter.counts[m + 1] += w_turned;
    if (counter.near_origin[turn]) counter.closable[m + 1] += w_turned;
    rec(rec, turn, m + 1, w_turned);
    path.pop_back();
    g.occupied[turn] = 0;
  }
  for (auto p : straight) g.occupied[p] = 0;
  return tasks;
}

struct SawTally {
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> closable;
};

SawTally tally_saws(int n, int d) {
  detail::check_dimension(d);
  detail::check_count_range(n, d);
  SawTally out{std::vector<std::uint64_t>(n + 1, 0),
               std::vector<std::uint64_t>(n + 1, 0)};
  out.counts[0] = 1;
  if (n == 0) return out;

  SawCounter head(d, n);
  const int split = std::min(n, 10);
  const auto tasks = split_tree(head, split);
  for (int m = 0; m <= n; ++m) {
    out.counts[m] += head.counts[m];
    out.closable[m] += head.closable[m];
  }
  if (tasks.empty()) return out;

  const std::size_t n_chunks = std::min<std::size_t>(tasks.size(), 64);
  std::vector<SawTally> partial(n_chunks);
  parallel_for(n_chunks, [&](std::size_t c) {
    SawCounter worker(d, n);
    for (std::size_t t = c; t < tasks.size(); t += n_chunks) {
      const auto& task = tasks[t];
      auto& occ = worker.grid.occupied;
      std::vector<std::int64_t> sites;
      std::int64_t pos = worker.grid.origin;
      for (auto dir : task.dirs) {
        pos += worker.grid.offset[dir];
        occ[pos] = 1;
        sites.push_back(pos);
      }
      worker.visit(pos, static_cast<int>(task.dirs.size()), task.weight);
      for (auto s : sites) occ[s] = 0;
    }
    partial[c] = {std::move(worker.counts), std::move(worker.closable)};
  });
  for (const auto& p : partial)
    for (int m = 0; m <= n; ++m) {
      out.counts[m] += p.counts[m];
      out.closable[m] += p.closable[m];
    }
  return out;
}

void check_saw_request(int n, const EnumerationLimits& limits) {
  if (n < 0) throw InvalidArgument("walk length must be >= 0");
  if (n > limits.saw_cap)
    throw ResourceLimit("n=" + std::to_string(n) +
                        " exceeds the SAW enumeration cap " +
                        std::to_string(limits.saw_cap));
}

}  // namespace

std::vector<std::uint64_t> saw_counts(int n_max, int dim,
                                      const EnumerationLimits& limits) {
  check_saw_request(n_max, limits);
  return tally_saws(n_max, dim).counts;
}

std::uint64_t count_saws(int n, int dim, const EnumerationLimits& limits) {
  return saw_counts(n, dim, limits).at(n);
}

SapCount count_saps(int n2, const EnumerationLimits& limits) {
  if (n2 < 2 || n2 % 2 != 0)
    throw InvalidArgument("polygon length must be even and >= 2");
  check_saw_request(n2, limits);
  if (n2 == 2) return {};
  const auto tally = tally_saws(n2 - 1, 2);
  SapCount out;
  out.rooted = tally.closable[n2 - 1];
  out.classes = out.rooted / (2 * static_cast<std::uint64_t>(n2));
  return out;
}

}  // namespace sawlab::lattice
