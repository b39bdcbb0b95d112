#pragma once

// Closed-form hull-removal maps in the half-plane and the disk, Schwarzian
// derivatives, and the Cayley transform between the two geometries.

#include <functional>

#include "sawlab/curve.hpp"

namespace sawlab::conformal {

/// Point of the Riemann sphere.
struct ExtendedComplex {
  Complex value{};
  bool infinite = false;

  static ExtendedComplex infinity() { return {Complex{}, true}; }
};

/// Upper-half-plane square root: the root with Im >= 0. On the cut (u real
/// and >= 0) the sign of the real part follows `sign_hint`.
Complex sqrt_upper(Complex u, double sign_hint = 1.0);

/// D -> H, z -> i(1+z)/(1-z); sends 0 to i and 1 to infinity.
ExtendedComplex cayley(Complex z);
/// H -> D, w -> (w-i)/(w+i); sends infinity to 1.
Complex cayley_inverse(ExtendedComplex w);
Complex cayley_inverse(Complex w);

enum class SlitKind { vertical_slit, half_disk };

/// Conformal map Phi_A from H \ A onto H with Phi_A(0) = 0 and
/// Phi_A(z) ~ z at infinity.
///   vertical_slit(x0, h): A = [x0, x0 + ih],
///       Phi(z) = psi(z) - psi(0), psi(z) = sqrt((z - x0)^2 + h^2)
///   half_disk(x, rho): A = closed disk |z - x| <= rho in H,
///       Phi(z) = z + rho^2/(z - x) + rho^2/x
class SlitMap {
 public:
  static SlitMap vertical_slit(double x0, double h);
  static SlitMap half_disk(double x, double rho);

  SlitKind kind() const { return kind_; }
  double center() const { return c_; }
  double size() const { return s_; }

  /// Whether z lies in the closed obstacle.
  bool in_obstacle(Complex z) const;
  /// Distance from z to the obstacle.
  double distance_to_obstacle(Complex z) const;

  /// Throws InvalidArgument on the obstacle.
  Complex operator()(Complex z) const;
  /// Derivative of order 1, 2 or 3.
  Complex derivative(Complex z, int order = 1) const;
  /// Phi_A'(0), in (0, 1).
  double dprime_at_zero() const;
  /// Closed-form Schwarzian from the stored derivatives.
  Complex schwarzian(Complex z) const;
  /// Coefficient of z^{-1} in the expansion at infinity (half-plane
  /// capacity).
  double capacity() const;

  /// Phi_A'(0)^a.
  double restriction_probability(double a) const;
  /// Boundary bubble measure of bubbles at 0 hitting A: -(5/48) S(0).
  double bubble_measure() const;

 private:
  SlitMap(SlitKind k, double c, double s) : kind_(k), c_(c), s_(s) {}
  Complex psi(Complex z) const;

  SlitKind kind_;
  double c_;
  double s_;
};

using ComplexMap = std::function<Complex(Complex)>;

/// S_f = f'''/f' - (3/2)(f''/f')^2 from given derivatives. Throws
/// SingularMapError if f' vanishes.
Complex schwarzian_from_derivatives(Complex d1, Complex d2, Complex d3);

/// Central differences along the real direction with two Richardson levels.
/// step <= 0 selects 1e-2 * max(1, |z|).
struct Derivatives {
  Complex d1, d2, d3;
};
Derivatives finite_difference_derivatives(const ComplexMap& f, Complex z,
                                          double step = 0.0);

/// Schwarzian of a generic map by finite_difference_derivatives.
Complex schwarzian(const ComplexMap& f, Complex z, double step = 0.0);

/// Conformal map Psi from U = D \ O onto D with Psi(0) = 0, Psi(1) = 1,
/// where O is the hyperbolic half-disk at e^{i theta}: the part of D cut off
/// by the circle orthogonal to the unit circle through the two boundary
/// points at distance delta from e^{i theta}. Built as
/// cayley^{-1} o M o h o cayley with h the half-disk removal map in H and M
/// a real affine map restoring Psi(0) = 0.
class RadialRestrictionMap {
 public:
  RadialRestrictionMap(double theta, double delta);

  double theta() const { return theta_; }
  double delta() const { return delta_; }
  /// Centre and radius of the circle bounding the obstacle.
  Complex obstacle_center() const { return oc_; }
  double obstacle_radius() const { return orad_; }

  bool in_obstacle(Complex z) const;
  double distance_to_obstacle(Complex z) const;

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  /// |Psi'(1)| <= 1.
  double dprime_at_one() const;
  /// |Psi'(0)| >= 1 (Schwarz lemma applied to Psi^{-1}).
  double dprime_at_zero() const;

  /// Half-plane half-disk parameters of the conjugated obstacle.
  double h_center() const { return hx_; }
  double h_radius() const { return hr_; }

 private:
  Complex h(Complex u) const;
  Complex dh(Complex u) const;

  double theta_, delta_;
  Complex oc_;
  double orad_;
  double hx_, hr_;
  Complex p_;  // h(i)
};

struct RadialFactors {
  double at_one = 1.0;
  double at_zero = 1.0;
  double probability = 1.0;  ///< |Psi'(1)|^{5/8} |Psi'(0)|^{5/48}
};

RadialFactors radial_restriction_factors(const RadialRestrictionMap& m);

}  // namespace sawlab::conformal
