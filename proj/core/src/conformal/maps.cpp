#include <algorithm>
#include <cmath>
#include <numbers>

#include "sawlab/conformal.hpp"
#include "sawlab/error.hpp"

namespace sawlab::conformal {

Complex sqrt_upper(Complex u, double sign_hint) {
  Complex s = std::sqrt(u);
  if (s.imag() < 0.0) s = -s;
  if (s.imag() == 0.0 && sign_hint < 0.0) s = -s;
  return s;
}

ExtendedComplex cayley(Complex z) {
  const Complex den = 1.0 - z;
  if (den == Complex{}) return ExtendedComplex::infinity();
  return {Complex(0.0, 1.0) * (1.0 + z) / den, false};
}

Complex cayley_inverse(ExtendedComplex w) {
  if (w.infinite) return 1.0;
  return cayley_inverse(w.value);
}

Complex cayley_inverse(Complex w) {
  const Complex i(0.0, 1.0);
  return (w - i) / (w + i);
}

SlitMap SlitMap::vertical_slit(double x0, double h) {
  if (!(h > 0.0)) throw InvalidArgument("vertical slit: h must be > 0");
  if (x0 == 0.0) throw InvalidArgument("vertical slit: base must avoid 0");
  return SlitMap(SlitKind::vertical_slit, x0, h);
}

SlitMap SlitMap::half_disk(double x, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("half disk: radius must be > 0");
  if (!(std::abs(x) > rho))
    throw InvalidArgument("half disk: obstacle must not contain 0");
  return SlitMap(SlitKind::half_disk, x, rho);
}

bool SlitMap::in_obstacle(Complex z) const {
  if (kind_ == SlitKind::vertical_slit)
    return z.real() == c_ && z.imag() >= 0.0 && z.imag() <= s_;
  return std::abs(z - c_) <= s_ && z.imag() >= 0.0;
}

double SlitMap::distance_to_obstacle(Complex z) const {
  if (kind_ == SlitKind::vertical_slit) {
    const double y = std::clamp(z.imag(), 0.0, s_);
    return std::abs(z - Complex(c_, y));
  }
  return std::max(0.0, std::abs(z - c_) - s_);
}

Complex SlitMap::psi(Complex z) const {
  const Complex w = z - c_;
  return sqrt_upper(w * w + s_ * s_, w.real());
}

Complex SlitMap::operator()(Complex z) const {
  if (in_obstacle(z)) throw InvalidArgument("SlitMap: point on the obstacle");
  if (kind_ == SlitKind::vertical_slit) return psi(z) - psi(0.0);
  return z + s_ * s_ / (z - c_) + s_ * s_ / c_;
}

Complex SlitMap::derivative(Complex z, int order) const {
  if (in_obstacle(z)) throw InvalidArgument("SlitMap: point on the obstacle");
  const Complex w = z - c_;
  const double s2 = s_ * s_;
  if (kind_ == SlitKind::vertical_slit) {
    const Complex p = psi(z);
    switch (order) {
      case 1: return w / p;
      case 2: return s2 / (p * p * p);
      case 3: return -3.0 * s2 * w / std::pow(p, 5);
    }
  } else {
    switch (order) {
      case 1: return 1.0 - s2 / (w * w);
      case 2: return 2.0 * s2 / (w * w * w);
      case 3: return -6.0 * s2 / (w * w * w * w);
    }
  }
  throw InvalidArgument("SlitMap::derivative: order must be 1, 2 or 3");
}

double SlitMap::dprime_at_zero() const {
  if (kind_ == SlitKind::vertical_slit)
    return std::abs(c_) / std::hypot(c_, s_);
  return 1.0 - s_ * s_ / (c_ * c_);
}

Complex SlitMap::schwarzian(Complex z) const {
  return schwarzian_from_derivatives(derivative(z, 1), derivative(z, 2),
                                     derivative(z, 3));
}

double SlitMap::capacity() const {
  // psi(z) = (z - x0) sqrt(1 + h^2/(z - x0)^2) = z - x0 + h^2 / (2z) + ...
  if (kind_ == SlitKind::vertical_slit) return 0.5 * s_ * s_;
  return s_ * s_;
}

double SlitMap::restriction_probability(double a) const {
  return std::pow(dprime_at_zero(), a);
}

double SlitMap::bubble_measure() const {
  return -(5.0 / 48.0) * schwarzian(0.0).real();
}

Complex schwarzian_from_derivatives(Complex d1, Complex d2, Complex d3) {
  if (std::abs(d1) < 1e-14)
    throw SingularMapError("Schwarzian: f' vanishes");
  const Complex r = d2 / d1;
  return d3 / d1 - 1.5 * r * r;
}

Derivatives finite_difference_derivatives(const ComplexMap& f, Complex z,
                                          double step) {
  if (step <= 0.0) step = 1e-2 * std::max(1.0, std::abs(z));
  auto level = [&](double h) {
    const Complex f0 = f(z);
    const Complex fp1 = f(z + h), fm1 = f(z - h);
    const Complex fp2 = f(z + 2.0 * h), fm2 = f(z - 2.0 * h);
    return Derivatives{(fp1 - fm1) / (2.0 * h),
                       (fp1 - 2.0 * f0 + fm1) / (h * h),
                       (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h)};
  };
  // Each stencil has an even error expansion in h.
  auto richardson = [](const Derivatives& coarse, const Derivatives& fine,
                       double factor) {
    return Derivatives{(factor * fine.d1 - coarse.d1) / (factor - 1.0),
                       (factor * fine.d2 - coarse.d2) / (factor - 1.0),
                       (factor * fine.d3 - coarse.d3) / (factor - 1.0)};
  };
  const auto a = level(step), b = level(step / 2), c = level(step / 4);
  const auto ab = richardson(a, b, 4.0), bc = richardson(b, c, 4.0);
  return richardson(ab, bc, 16.0);
}

Complex schwarzian(const ComplexMap& f, Complex z, double step) {
  const auto d = finite_difference_derivatives(f, z, step);
  return schwarzian_from_derivatives(d.d1, d.d2, d.d3);
}

RadialRestrictionMap::RadialRestrictionMap(double theta, double delta)
    : theta_(theta), delta_(delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw InvalidArgument("radial obstacle: delta must be in (0, 1)");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (!(delta < std::abs(1.0 - std::polar(1.0, t))))
    throw InvalidArgument("radial obstacle must avoid the marked point 1");
  theta_ = t;
  const double phi = 2.0 * std::asin(delta / 2.0);
  oc_ = std::polar(1.0 / std::cos(phi), t);
  orad_ = std::tan(phi);
  // Feet e^{i(t +- phi)} go to -cot((t +- phi)/2) on the real line.
  const double u1 = -1.0 / std::tan(0.5 * (t - phi));
  const double u2 = -1.0 / std::tan(0.5 * (t + phi));
  hx_ = 0.5 * (u1 + u2);
  hr_ = 0.5 * std::abs(u1 - u2);
  p_ = h(Complex(0.0, 1.0));
}

bool RadialRestrictionMap::in_obstacle(Complex z) const {
  return std::abs(z - oc_) <= orad_;
}

double RadialRestrictionMap::distance_to_obstacle(Complex z) const {
  return std::max(0.0, std::abs(z - oc_) - orad_);
}

Complex RadialRestrictionMap::h(Complex u) const {
  return u + hr_ * hr_ / (u - hx_);
}

Complex RadialRestrictionMap::dh(Complex u) const {
  const Complex w = u - hx_;
  return 1.0 - hr_ * hr_ / (w * w);
}

Complex RadialRestrictionMap::operator()(Complex z) const {
  if (in_obstacle(z))
    throw InvalidArgument("RadialRestrictionMap: point in the obstacle");
  const auto u = cayley(z);
  if (u.infinite) return 1.0;
  const Complex m = (h(u.value) - p_.real()) / p_.imag();
  return cayley_inverse(m);
}

Complex RadialRestrictionMap::derivative(Complex z) const {
  if (in_obstacle(z))
    throw InvalidArgument("RadialRestrictionMap: point in the obstacle");
  if (z == Complex(1.0, 0.0)) return p_.imag();
  const Complex i(0.0, 1.0);
  const Complex u = cayley(z).value;
  const Complex du = 2.0 * i / ((1.0 - z) * (1.0 - z));
  const Complex m = (h(u) - p_.real()) / p_.imag();
  const Complex dm = dh(u) / p_.imag();
  const Complex dinv = 2.0 * i / ((m + i) * (m + i));
  return dinv * dm * du;
}

double RadialRestrictionMap::dprime_at_one() const { return p_.imag(); }

double RadialRestrictionMap::dprime_at_zero() const {
  return std::abs(dh(Complex(0.0, 1.0))) / p_.imag();
}

RadialFactors radial_restriction_factors(const RadialRestrictionMap& m) {
  RadialFactors f;
  f.at_one = m.dprime_at_one();
  f.at_zero = m.dprime_at_zero();
  f.probability =
      std::pow(f.at_one, 5.0 / 8.0) * std::pow(f.at_zero, 5.0 / 48.0);
  return f;
}

}  // namespace sawlab::conformal
