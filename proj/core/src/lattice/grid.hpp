#pragma once

// Flat occupancy grid shared by the enumerators.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sawlab/error.hpp"
#include "sawlab/lattice.hpp"

namespace sawlab::lattice::detail {

struct Grid {
  int dim = 2;
  std::int64_t side = 0;
  std::int64_t origin = 0;
  std::vector<std::int64_t> offset;  // by Direction
  std::vector<std::uint8_t> occupied;

  /// Grid large enough that no n-step walk from the centre leaves it.
  Grid(int d, int n) : dim(d), side(2 * std::int64_t(n) + 3) {
    const double cells = std::pow(double(side), d);
    if (cells > 2.0e8)
      throw ResourceLimit("enumeration grid too large for n=" +
                          std::to_string(n) + ", d=" + std::to_string(d));
    std::int64_t stride = 1;
    offset.resize(2 * d);
    for (int a = 0; a < d; ++a) {
      offset[2 * a] = stride;
      offset[2 * a + 1] = -stride;
      origin += (side / 2) * stride;
      stride *= side;
    }
    occupied.assign(static_cast<std::size_t>(stride), 0);
    occupied[origin] = 1;
  }
};

inline void check_dimension(int d) {
  if (d < 2) throw InvalidArgument("dimension must be >= 2");
}

/// Throws unless every n-step count in dimension d fits in 63 bits.
inline void check_count_range(int n, int d) {
  const long double bound =
      2.0L * d * std::pow(2.0L * d - 1.0L, static_cast<long double>(n - 1));
  if (n > 0 && bound > 9.2e18L)
    throw ResourceLimit("walk counts may overflow 64-bit accumulators");
}

}  // namespace sawlab::lattice::detail
