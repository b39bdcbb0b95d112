#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "raster.hpp"
#include "sawlab/brownian.hpp"
#include "sawlab/error.hpp"

namespace sawlab::brownian {

GridRegion::GridRegion(double resolution, double x0, double y0, int width,
                       int height)
    : res_(resolution), x0_(x0), y0_(y0), w_(width), h_(height) {
  if (!(resolution > 0.0)) throw InvalidArgument("grid: resolution must be > 0");
  if (width < 1 || height < 1) throw InvalidArgument("grid: empty extent");
  if (double(width) * double(height) > 4e8)
    throw ResourceLimit("grid: more than 4e8 cells");
  cells_.assign(std::size_t(width) * height, 0);
}

bool GridRegion::filled(int i, int j) const {
  if (i < 0 || j < 0 || i >= w_ || j >= h_) return false;
  return cells_[std::size_t(j) * w_ + i] != 0;
}

void GridRegion::set(int i, int j, bool v) {
  if (i < 0 || j < 0 || i >= w_ || j >= h_)
    throw InvalidArgument("grid: cell outside the extent");
  cells_[std::size_t(j) * w_ + i] = v;
}

bool GridRegion::contains(Complex z) const {
  return filled(int(std::floor((z.real() - x0_) / res_)),
                int(std::floor((z.imag() - y0_) / res_)));
}

std::size_t GridRegion::count() const {
  return std::size_t(std::count(cells_.begin(), cells_.end(), 1));
}

Complex GridRegion::cell_center(int i, int j) const {
  return {x0_ + (i + 0.5) * res_, y0_ + (j + 0.5) * res_};
}

std::string GridRegion::to_rle() const {
  std::string out;
  for (int j = 0; j < h_; ++j) {
    std::string row;
    for (int i = 0; i < w_;) {
      if (!filled(i, j)) {
        ++i;
        continue;
      }
      int k = i;
      while (k < w_ && filled(k, j)) ++k;
      row += std::to_string(i) + "+" + std::to_string(k - i) + ",";
      i = k;
    }
    if (!row.empty()) {
      row.back() = ';';
      out += std::to_string(j) + ":" + row;
    }
  }
  return out;
}

namespace {

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

// Labels 4-connected components of `mask`; returns labels (0 = empty) and
// the cell count per label.
std::pair<std::vector<int>, std::vector<std::size_t>> components(
    const std::vector<std::uint8_t>& mask, int w, int h) {
  std::vector<int> label(mask.size(), 0);
  std::vector<std::size_t> sizes{0};
  std::vector<int> stack;
  for (int s = 0; s < w * h; ++s) {
    if (!mask[s] || label[s]) continue;
    const int id = static_cast<int>(sizes.size());
    sizes.push_back(0);
    label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      ++sizes[id];
      const int ci = c % w, cj = c / w;
      for (int d = 0; d < 4; ++d) {
        const int ni = ci + kDx[d], nj = cj + kDy[d];
        if (ni < 0 || nj < 0 || ni >= w || nj >= h) continue;
        const int n = nj * w + ni;
        if (mask[n] && !label[n]) {
          label[n] = id;
          stack.push_back(n);
        }
      }
    }
  }
  return {std::move(label), std::move(sizes)};
}

}  // namespace

double default_resolution(const std::vector<PlanarCurve>& curves) {
  double d = 0.0;
  for (const auto& c : curves) d = std::max(d, c.diameter());
  PlanarCurve all;
  for (const auto& c : curves)
    all.points.insert(all.points.end(), c.points.begin(), c.points.end());
  d = std::max(d, all.diameter());
  return d > 0.0 ? d / 512.0 : 1.0;
}

GridRegion hull_fill(const std::vector<PlanarCurve>& curves,
                     double resolution) {
  if (curves.empty()) throw InvalidArgument("hull_fill: no curves");
  if (!(resolution > 0.0))
    throw InvalidArgument("hull_fill: resolution must be > 0");
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  for (const auto& c : curves)
    for (const Complex& z : c.points) {
      xmin = std::min(xmin, z.real());
      xmax = std::max(xmax, z.real());
      ymin = std::min(ymin, z.imag());
      ymax = std::max(ymax, z.imag());
    }
  if (!(xmax >= xmin)) throw InvalidArgument("hull_fill: curves are empty");
  // Cells are aligned to multiples of the resolution, with a two-cell margin.
  const double r = resolution;
  const double ox = (std::floor(xmin / r) - 2.0) * r;
  const double oy = (std::floor(ymin / r) - 2.0) * r;
  const double wd = std::floor(xmax / r) - std::floor(xmin / r) + 5.0;
  const double ht = std::floor(ymax / r) - std::floor(ymin / r) + 5.0;
  if (wd * ht > 4e8) throw ResourceLimit("hull_fill: more than 4e8 cells");
  GridRegion g(r, ox, oy, int(wd), int(ht));
  const int w = g.width(), h = g.height();

  std::vector<std::uint8_t> curve(std::size_t(w) * h, 0);
  auto mark = [&](std::int64_t i, std::int64_t j) {
    if (i >= 0 && j >= 0 && i < w && j < h) curve[std::size_t(j) * w + i] = 1;
  };
  std::size_t raster = 0;
  for (const auto& c : curves) {
    if (c.empty()) continue;
    auto cx = [&](Complex z) { return (z.real() - ox) / r; };
    auto cy = [&](Complex z) { return (z.imag() - oy) / r; };
    mark(std::int64_t(std::floor(cx(c.points[0]))),
         std::int64_t(std::floor(cy(c.points[0]))));
    for (std::size_t k = 1; k < c.size(); ++k)
      detail::supercover(cx(c.points[k - 1]), cy(c.points[k - 1]),
                         cx(c.points[k]), cy(c.points[k]), mark);
  }
  for (auto v : curve) raster += v;

  // Exterior: 4-connected flood fill of the complement from the margin.
  std::vector<std::uint8_t> outside(curve.size(), 0);
  std::vector<int> stack{0};
  outside[0] = 1;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    const int ci = c % w, cj = c / w;
    for (int d = 0; d < 4; ++d) {
      const int ni = ci + kDx[d], nj = cj + kDy[d];
      if (ni < 0 || nj < 0 || ni >= w || nj >= h) continue;
      const int n = nj * w + ni;
      if (!curve[n] && !outside[n]) {
        outside[n] = 1;
        stack.push_back(n);
      }
    }
  }
  std::size_t filled = 0;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i)
      if (!outside[std::size_t(j) * w + i]) {
        g.set(i, j);
        ++filled;
      }
  bool closed = false;
  for (const auto& c : curves)
    closed |= c.size() > 3 && c.points.front() == c.points.back();
  if (closed && filled == raster) {
    g.flagged = true;
    g.note = "closed curve but no interior cells: resolution too coarse";
  }
  return g;
}

FrontierResult frontier(const GridRegion& region) {
  const int w = region.width(), h = region.height();
  std::vector<std::uint8_t> mask(std::size_t(w) * h, 0);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) mask[std::size_t(j) * w + i] = region.filled(i, j);
  auto [label, sizes] = components(mask, w, h);
  if (sizes.size() < 2) throw InvalidArgument("frontier: region is empty");
  FrontierResult out;
  const int keep = static_cast<int>(
      std::max_element(sizes.begin() + 1, sizes.end()) - sizes.begin());
  if (sizes.size() > 2) {
    out.flagged = true;
    out.note = std::to_string(sizes.size() - 1) +
               " components; traced the largest";
  }
  auto in = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < w && j < h &&
           label[std::size_t(j) * w + i] == keep;
  };

  // Lowest row, leftmost cell: its bottom edge is on the outer boundary.
  int si = -1, sj = -1;
  for (int j = 0; j < h && si < 0; ++j)
    for (int i = 0; i < w; ++i)
      if (in(i, j)) {
        si = i;
        sj = j;
        break;
      }

  // Walk cell edges counterclockwise with the region on the left. State:
  // owner cell (i, j) and heading d (0 = E, 1 = N, 2 = W, 3 = S); the edge
  // is the side of the owner on its right-hand side.
  std::vector<std::pair<int, int>> chain;
  auto push = [&](int i, int j) {
    if (chain.empty() || chain.back() != std::pair{i, j}) chain.emplace_back(i, j);
  };
  int i = si, j = sj, d = 0;
  const std::size_t limit = 4 * std::size_t(w) * h + 8;
  for (std::size_t step = 0; step < limit; ++step) {
    push(i, j);
    // Cells ahead: front-left (same row as owner, one step along d) and
    // front-right (diagonal, on the outer side).
    const int fi = i + kDx[d], fj = j + kDy[d];
    const int rd = (d + 3) % 4;
    const int gi = fi + kDx[rd], gj = fj + kDy[rd];
    if (!in(fi, fj)) {
      d = (d + 1) % 4;  // turn left around the owner's corner
    } else if (!in(gi, gj)) {
      i = fi;  // straight
      j = fj;
    } else {
      push(fi, fj);  // turn right into the diagonal cell
      i = gi;
      j = gj;
      d = rd;
    }
    if (i == si && j == sj && d == 0) break;
  }
  if (chain.size() > 1 && chain.back() == chain.front()) chain.pop_back();
  out.curve.geometry = Geometry::plane;
  for (const auto& [a, b] : chain) out.curve.points.push_back(region.cell_center(a, b));
  out.curve.points.push_back(out.curve.points.front());
  return out;
}

std::vector<double> dyadic_scales(double diameter, int k_min, int k_max) {
  if (!(diameter > 0.0) || k_max < k_min)
    throw InvalidArgument("dyadic_scales: bad range");
  std::vector<double> s;
  for (int k = k_min; k <= k_max; ++k) s.push_back(std::ldexp(diameter, -k));
  return s;
}

namespace {

void check_scales(const std::vector<double>& scales) {
  if (scales.size() < 4)
    throw InvalidArgument("box dimension: need >= 4 scales");
  const auto [lo, hi] = std::minmax_element(scales.begin(), scales.end());
  if (!(*lo > 0.0)) throw InvalidArgument("box dimension: scales must be > 0");
  if (*hi / *lo < 100.0)
    throw InvalidArgument("box dimension: scales must span a factor >= 100");
}

std::uint64_t key(double x, double y, double eps) {
  const auto a = static_cast<std::int64_t>(std::floor(x / eps));
  const auto b = static_cast<std::int64_t>(std::floor(y / eps));
  return (std::uint64_t(a) << 32) ^ (std::uint64_t(b) & 0xffffffffu);
}

std::vector<double> log_counts(const PlanarCurve& c,
                               const std::vector<double>& scales) {
  if (c.empty()) throw InvalidArgument("box dimension: empty curve");
  const double fine = *std::min_element(scales.begin(), scales.end()) / 4.0;
  std::vector<Complex> pts{c.points[0]};
  for (std::size_t k = 1; k < c.size(); ++k) {
    const Complex a = c.points[k - 1], b = c.points[k];
    const int pieces = std::max(1, int(std::ceil(std::abs(b - a) / fine)));
    for (int p = 1; p <= pieces; ++p) pts.push_back(a + (b - a) * (double(p) / pieces));
  }
  std::vector<double> out;
  std::unordered_set<std::uint64_t> boxes;
  for (double eps : scales) {
    boxes.clear();
    boxes.reserve(pts.size());
    for (const Complex& z : pts) boxes.insert(key(z.real(), z.imag(), eps));
    out.push_back(std::log(double(boxes.size())));
  }
  return out;
}

EstimateWithError fit(const std::vector<double>& scales,
                      const std::vector<double>& logn) {
  std::vector<double> x;
  for (double e : scales) x.push_back(-std::log(e));
  const auto f = stats::fit_line(x, logn);
  EstimateWithError e;
  e.value = f.slope;
  e.std_error = f.slope_se;
  e.n_samples = 1;
  const auto [lo, hi] = std::minmax_element(scales.begin(), scales.end());
  e.window = "eps=" + std::to_string(*lo) + ".." + std::to_string(*hi) + " (" +
             std::to_string(scales.size()) + " scales)";
  return e;
}

}  // namespace

EstimateWithError box_dimension(const PlanarCurve& curve,
                                const std::vector<double>& scales) {
  check_scales(scales);
  return fit(scales, log_counts(curve, scales));
}

EstimateWithError box_dimension(const std::vector<PlanarCurve>& curves,
                                const std::vector<double>& scales) {
  check_scales(scales);
  if (curves.empty()) throw InvalidArgument("box dimension: no curves");
  std::vector<double> mean(scales.size(), 0.0), slopes;
  for (const auto& c : curves) {
    const auto l = log_counts(c, scales);
    for (std::size_t k = 0; k < l.size(); ++k) mean[k] += l[k] / curves.size();
    slopes.push_back(fit(scales, l).value);
  }
  auto e = fit(scales, mean);
  e.n_samples = curves.size();
  if (curves.size() >= 2)
    e.std_error = std::sqrt(stats::variance(slopes) / double(curves.size()));
  return e;
}

EstimateWithError box_dimension(const GridRegion& region,
                                const std::vector<double>& scales) {
  check_scales(scales);
  if (region.empty()) throw InvalidArgument("box dimension: empty region");
  std::vector<double> logn;
  std::unordered_set<std::uint64_t> boxes;
  for (double eps : scales) {
    boxes.clear();
    for (int j = 0; j < region.height(); ++j)
      for (int i = 0; i < region.width(); ++i)
        if (region.filled(i, j)) {
          const Complex z = region.cell_center(i, j);
          boxes.insert(key(z.real(), z.imag(), eps));
        }
    logn.push_back(std::log(double(boxes.size())));
  }
  return fit(scales, logn);
}

}  // namespace sawlab::brownian
