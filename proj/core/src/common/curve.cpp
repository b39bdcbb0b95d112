#include "sawlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sawlab {

double PlanarCurve::diameter() const {
  // Exact max pairwise distance is quadratic; the bounding-box diagonal and the
  // max extent along a few directions bracket it tightly enough for scale
  // choices, so use the max over 16 projection directions.
  if (points.size() < 2) return 0.0;
  double best = 0.0;
  constexpr int kDirs = 16;
  for (int k = 0; k < kDirs; ++k) {
    const double th = M_PI * k / kDirs;
    const Complex u(std::cos(th), std::sin(th));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Complex& z : points) {
      const double p = z.real() * u.real() + z.imag() * u.imag();
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

double PlanarCurve::max_modulus() const {
  double m = 0.0;
  for (const Complex& z : points) m = std::max(m, std::abs(z));
  return m;
}

double PlanarCurve::mean_spacing() const {
  if (points.size() < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    s += std::abs(points[i] - points[i - 1]);
  return s / static_cast<double>(points.size() - 1);
}

namespace geom {
namespace {

double cross(Complex a, Complex b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

bool segments_cross(Complex a, Complex b, Complex c, Complex d) {
  const double d1 = cross(d - c, a - c);
  const double d2 = cross(d - c, b - c);
  const double d3 = cross(b - a, c - a);
  const double d4 = cross(b - a, d - a);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double segment_segment_distance(Complex a, Complex b, Complex c, Complex d) {
  if (segments_cross(a, b, c, d)) return 0.0;
  return std::min({point_segment_distance(a, c, d),
                   point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b),
                   point_segment_distance(d, a, b)});
}

double polyline_segment_distance(std::span<const Complex> points, Complex a,
                                 Complex b) {
  if (points.empty()) return std::numeric_limits<double>::infinity();
  if (points.size() == 1) return point_segment_distance(points[0], a, b);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points.size(); ++i) {
    best = std::min(best,
                    segment_segment_distance(points[i - 1], points[i], a, b));
    if (best == 0.0) break;
  }
  return best;
}

bool polyline_enters_disk(std::span<const Complex> points, Complex center,
                          double radius) {
  if (points.empty()) return false;
  if (std::abs(points[0] - center) < radius) return true;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (point_segment_distance(center, points[i - 1], points[i]) < radius)
      return true;
  }
  return false;
}

std::size_t first_exit_index(std::span<const Complex> points, double radius) {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (std::abs(points[i]) >= radius) return i;
  return points.size();
}

Complex first_exit_point(std::span<const Complex> points, double radius) {
  const std::size_t i = first_exit_index(points, radius);
  if (i == 0 || i >= points.size()) return points[std::min(i, points.size() - 1)];
  // Solve |a + t (b - a)| = radius for t in [0, 1].
  const Complex a = points[i - 1];
  const Complex ab = points[i] - a;
  const double qa = std::norm(ab);
  const double qb = 2.0 * (a * std::conj(ab)).real();
  const double qc = std::norm(a) - radius * radius;
  const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
  const double t = std::clamp((-qb + std::sqrt(disc)) / (2.0 * qa), 0.0, 1.0);
  return a + t * ab;
}

int winding_number(std::span<const Complex> loop, Complex p) {
  // Crossing-number form of the winding number (Sunday's algorithm).
  int wn = 0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = loop[i];
    const Complex b = loop[(i + 1) % n];
    const double side = cross(b - a, p - a);
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && side > 0) ++wn;
    } else {
      if (b.imag() <= p.imag() && side < 0) --wn;
    }
  }
  return wn;
}

}  // namespace geom
}  // namespace sawlab
