#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>

namespace sawlab::brownian::detail {

// Visits every unit cell [i, i+1) x [j, j+1) met by the segment from (ax, ay)
// to (bx, by), in order. Corner crossings visit the x-neighbour first, so the
// visited cells are 4-connected.
template <class Mark>
void supercover(double ax, double ay, double bx, double by, Mark mark) {
  std::int64_t i = static_cast<std::int64_t>(std::floor(ax));
  std::int64_t j = static_cast<std::int64_t>(std::floor(ay));
  const std::int64_t ie = static_cast<std::int64_t>(std::floor(bx));
  const std::int64_t je = static_cast<std::int64_t>(std::floor(by));
  mark(i, j);
  const double dx = bx - ax, dy = by - ay;
  const int sx = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int sy = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double tdx = sx ? 1.0 / std::abs(dx) : inf;
  const double tdy = sy ? 1.0 / std::abs(dy) : inf;
  double tmx = sx > 0 ? (double(i) + 1.0 - ax) / dx
               : sx < 0 ? (ax - double(i)) / -dx
                        : inf;
  double tmy = sy > 0 ? (double(j) + 1.0 - ay) / dy
               : sy < 0 ? (ay - double(j)) / -dy
                        : inf;
  std::int64_t left = std::llabs(ie - i) + std::llabs(je - j);
  while (left > 0) {
    if (tmx < tmy || (tmx == tmy && left == 1 && i != ie)) {
      i += sx;
      tmx += tdx;
    } else if (tmy < tmx || left == 1) {
      j += sy;
      tmy += tdy;
    } else {
      i += sx;
      tmx += tdx;
      mark(i, j);
      --left;
      j += sy;
      tmy += tdy;
    }
    mark(i, j);
    --left;
  }
}

}  // namespace sawlab::brownian::detail
