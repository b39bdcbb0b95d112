#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code with the library: walks are grown with a std::set of visited
// points and every predicate is evaluated from its definition.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Pt = std::pair<int, int>;
using Path = std::vector<Pt>;

inline constexpr std::array<Pt, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

// Calls visit(path) for every n-step SAW from the origin.
inline void for_each_saw(int n, const std::function<void(const Path&)>& visit) {
  Path path{{0, 0}};
  std::set<Pt> seen{{0, 0}};
  std::function<void()> grow = [&] {
    if (int(path.size()) == n + 1) {
      visit(path);
      return;
    }
    for (const auto& s : kSteps) {
      const Pt q{path.back().first + s.first, path.back().second + s.second};
      if (seen.count(q)) continue;
      seen.insert(q);
      path.push_back(q);
      grow();
      path.pop_back();
      seen.erase(q);
    }
  };
  grow();
}

inline std::uint64_t count_saws(int n) {
  std::uint64_t c = 0;
  for_each_saw(n, [&](const Path&) { ++c; });
  return c;
}

inline bool in_half_space(const Path& p) {
  for (std::size_t j = 1; j < p.size(); ++j)
    if (p[j].first <= p[0].first) return false;
  return true;
}

// pi1 w0 < pi1 wj <= pi1 wn for j = 1..n.
inline bool is_bridge(const Path& p) {
  const int lo = p.front().first, hi = p.back().first;
  for (std::size_t j = 1; j < p.size(); ++j)
    if (!(lo < p[j].first && p[j].first <= hi)) return false;
  return true;
}

// j in 1..n-1 with pi1 w_k <= pi1 w_j < pi1 w_m for all k <= j < m.
inline std::vector<int> renewal_times(const Path& p) {
  std::vector<int> out;
  const int n = int(p.size()) - 1;
  for (int j = 1; j < n; ++j) {
    bool ok = true;
    for (int k = 0; k <= j && ok; ++k) ok = p[k].first <= p[j].first;
    for (int m = j + 1; m <= n && ok; ++m) ok = p[j].first < p[m].first;
    if (ok) out.push_back(j);
  }
  return out;
}

inline std::uint64_t count_half_space(int n) {
  std::uint64_t c = 0;
  for_each_saw(n, [&](const Path& p) { c += in_half_space(p); });
  return c;
}

inline std::uint64_t count_irreducible_bridges(int n) {
  std::uint64_t c = 0;
  for_each_saw(n, [&](const Path& p) {
    c += is_bridge(p) && renewal_times(p).empty();
  });
  return c;
}

// Closed n2-step walks from the origin whose first n2 points are distinct.
inline std::uint64_t count_rooted_cycles(int n2) {
  std::uint64_t c = 0;
  if (n2 < 2) return 0;
  for_each_saw(n2 - 1, [&](const Path& p) {
    const int d = std::abs(p.back().first) + std::abs(p.back().second);
    c += d == 1 && n2 > 2;
  });
  return c;
}

// Simple random walk of n steps.
template <class Rng>
Path random_walk(int n, Rng& rng) {
  Path p{{0, 0}};
  for (int k = 0; k < n; ++k) {
    const auto& s = kSteps[rng() % 4];
    p.push_back({p.back().first + s.first, p.back().second + s.second});
  }
  return p;
}

// Vertical slit [x0, x0 + ih]: Phi(z) = sqrt((z - x0)^2 + h^2) - sqrt(x0^2 + h^2)
// on the upper half-plane, evaluated with an explicit branch choice.
// Branch of sqrt((z - x0)^2 + h^2) that maps H onto H, shifted so 0 -> 0.
inline std::complex<double> slit_root(double x0, double h, std::complex<double> z) {
  const std::complex<double> u = (z - x0) * (z - x0) + h * h;
  std::complex<double> r = std::sqrt(u);
  if (r.imag() < 0 || (r.imag() == 0 && (z.real() - x0) * r.real() < 0)) r = -r;
  return r;
}

inline std::complex<double> slit_map(double x0, double h, std::complex<double> z) {
  return slit_root(x0, h, z) - slit_root(x0, h, 0.0);
}

}  // namespace oracle
