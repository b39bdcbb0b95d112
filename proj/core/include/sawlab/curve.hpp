#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sawlab {

using Complex = std::complex<double>;

enum class Geometry { half_plane, disk, plane };

/// Finitely sampled planar curve. `times` is either empty or has one
/// capacity stamp per point.
struct PlanarCurve {
  std::vector<Complex> points;
  std::vector<double> times;
  Geometry geometry = Geometry::plane;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_times() const { return !times.empty(); }

  /// Largest distance between two sample points.
  double diameter() const;
  /// Largest |z| over the samples.
  double max_modulus() const;
  /// Mean distance between consecutive samples.
  double mean_spacing() const;
};

namespace geom {

/// Distance from p to the closed segment [a, b].
double point_segment_distance(Complex p, Complex a, Complex b);

/// Distance between closed segments [a, b] and [c, d].
double segment_segment_distance(Complex a, Complex b, Complex c, Complex d);

/// Smallest distance from the polyline through `points` to the segment [a, b].
double polyline_segment_distance(std::span<const Complex> points, Complex a,
                                 Complex b);

/// Whether the polyline meets the open disk |z - center| < radius.
bool polyline_enters_disk(std::span<const Complex> points, Complex center,
                          double radius);

/// Index of the first sample with |z| >= radius, or points.size().
std::size_t first_exit_index(std::span<const Complex> points, double radius);

/// Point where the polyline first crosses |z| = radius (interpolated on the
/// crossing segment). Requires first_exit_index < size.
Complex first_exit_point(std::span<const Complex> points, double radius);

/// Winding number of the closed polygon `loop` around p.
int winding_number(std::span<const Complex> loop, Complex p);

}  // namespace geom
}  // namespace sawlab
