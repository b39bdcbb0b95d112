#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sawlab/conformal.hpp"
#include "sawlab/error.hpp"
#include "sawlab/rng.hpp"

using namespace sawlab;
using namespace sawlab::conformal;

constexpr double kPi = std::numbers::pi;

TEST(SlitMap, DerivativeAtZero) {
  const auto m = SlitMap::vertical_slit(-1.0, 1.0);
  EXPECT_NEAR(m.dprime_at_zero(), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(m.restriction_probability(5.0 / 8.0), std::pow(0.5, 5.0 / 16.0),
              1e-14);
  EXPECT_NEAR(m.restriction_probability(5.0 / 8.0), 0.8053, 1e-3);
  EXPECT_NEAR(SlitMap::vertical_slit(-1.0, 1e-6).dprime_at_zero(), 1.0, 1e-9);
}

TEST(SlitMap, AgreesWithOracle) {
  auto rng = make_rng(2);
  std::uniform_real_distribution<double> u(-4.0, 4.0), v(0.01, 4.0);
  for (double x0 : {-1.0, 0.5, 2.0})
    for (double h : {0.3, 1.0}) {
      const auto m = SlitMap::vertical_slit(x0, h);
      EXPECT_NEAR(std::abs(m(0.0)), 0.0, 1e-14);
      for (int i = 0; i < 200; ++i) {
        const Complex z(u(rng), v(rng));
        if (m.in_obstacle(z)) continue;
        const Complex w = m(z);
        EXPECT_NEAR(std::abs(w - oracle::slit_map(x0, h, z)), 0.0, 1e-12);
        EXPECT_GE(w.imag(), 0.0);
      }
    }
}

TEST(SlitMap, HydrodynamicNormalisation) {
  const auto m = SlitMap::vertical_slit(-1.0, 1.0);
  const Complex z(3e4, 2e4);
  // Phi(z) - z -> constant; the capacity is h^2 / 2.
  EXPECT_NEAR(m.capacity(), 0.5, 1e-14);
  EXPECT_NEAR(std::abs(m.derivative(z) - 1.0), 0.0, 1e-8);
  const auto d = SlitMap::half_disk(2.0, 0.5);
  EXPECT_NEAR(d.capacity(), 0.25, 1e-14);
  EXPECT_NEAR(d.dprime_at_zero(), 1.0 - 0.25 / 4.0, 1e-14);
  EXPECT_THROW(m(Complex(-1.0, 0.5)), InvalidArgument);
}

TEST(Schwarzian, SlitAtZeroAndBubble) {
  const auto m = SlitMap::vertical_slit(-1.0, 1.0);
  EXPECT_NEAR(m.schwarzian(0.0).real(), -9.0 / 8.0, 1e-12);
  EXPECT_NEAR(m.bubble_measure(), 15.0 / 128.0, 1e-12);
  const ComplexMap f = [&](Complex z) { return m(z); };
  EXPECT_NEAR(std::abs(schwarzian(f, 0.0) - m.schwarzian(0.0)), 0.0, 1e-6);
  for (Complex z : {Complex(0.5, 0.5), Complex(2.0, 1.0), Complex(-3.0, 0.2)})
    EXPECT_NEAR(std::abs(schwarzian(f, z) - m.schwarzian(z)), 0.0, 1e-6);
}

TEST(Schwarzian, VanishesOnMobius) {
  const Complex a(1.0, 2.0), b(-0.5, 0.0), c(0.3, -0.1), d(2.0, 1.0);
  const ComplexMap f = [&](Complex z) { return (a * z + b) / (c * z + d); };
  for (Complex z : {Complex(0.0, 0.0), Complex(0.7, 0.2), Complex(-1.0, 3.0)})
    EXPECT_NEAR(std::abs(schwarzian(f, z)), 0.0, 1e-6);
}

TEST(Schwarzian, VanishingDerivativeThrows) {
  EXPECT_THROW(schwarzian_from_derivatives(0.0, 1.0, 1.0), SingularMapError);
}

TEST(Cayley, Basics) {
  EXPECT_NEAR(std::abs(cayley(0.0).value - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_TRUE(cayley(1.0).infinite);
  const Complex z(0.3, 0.1);
  EXPECT_NEAR(std::abs(cayley_inverse(cayley(z)) - z), 0.0, 1e-12);
  for (int k = 1; k < 64; ++k) {
    const double t = 2.0 * kPi * k / 64.0;
    const auto w = cayley(std::polar(1.0, t));
    EXPECT_NEAR(w.value.imag(), 0.0, 1e-12 * (1.0 + std::abs(w.value)));
  }
}

TEST(Radial, FactorsAgainstNumericalDerivatives) {
  const RadialRestrictionMap m(kPi, 0.3);
  EXPECT_NEAR(std::abs(m(0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m(1.0) - 1.0), 0.0, 1e-12);
  const double h = 1e-4;
  const double d0 = std::abs(m(Complex(h, 0.0)) - m(Complex(-h, 0.0))) / (2 * h);
  const double d1 =
      std::abs(m(std::polar(1.0, h)) - m(std::polar(1.0, -h))) / (2 * h);
  const auto f = radial_restriction_factors(m);
  EXPECT_NEAR(f.at_zero, d0, 1e-6);
  EXPECT_NEAR(f.at_one, d1, 1e-6);
  EXPECT_NEAR(f.probability,
              std::pow(f.at_one, 5.0 / 8.0) * std::pow(f.at_zero, 5.0 / 48.0),
              1e-14);
}

TEST(Radial, SchwarzLemmaBoundsOnGrid) {
  // Psi^{-1} maps the disk into itself fixing 0, so |Psi'(0)| >= 1.
  for (double theta : {0.5, kPi / 2, kPi, 4.0, 5.5})
    for (double delta : {0.05, 0.2, 0.5, 0.9}) {
      if (delta >= std::abs(std::polar(1.0, theta) - 1.0)) continue;
      const RadialRestrictionMap m(theta, delta);
      EXPECT_LE(m.dprime_at_one(), 1.0 + 1e-12);
      EXPECT_GE(m.dprime_at_zero(), 1.0 - 1e-12);
    }
}

TEST(Radial, VanishingObstacle) {
  const auto f = radial_restriction_factors(RadialRestrictionMap(kPi, 1e-5));
  EXPECT_NEAR(f.at_one, 1.0, 1e-6);
  EXPECT_NEAR(f.at_zero, 1.0, 1e-6);
  EXPECT_NEAR(f.probability, 1.0, 1e-6);
}

TEST(Radial, MapsOntoDisk) {
  const RadialRestrictionMap m(kPi, 0.3);
  auto rng = make_rng(8);
  std::uniform_real_distribution<double> r(0.0, 0.999), t(0.0, 2 * kPi);
  for (int i = 0; i < 500; ++i) {
    const Complex z = std::polar(std::sqrt(r(rng)), t(rng));
    if (m.in_obstacle(z)) continue;
    EXPECT_LT(std::abs(m(z)), 1.0 + 1e-12);
  }
  for (int k = 1; k < 32; ++k) {
    const Complex z = std::polar(1.0, 2 * kPi * k / 32 * 0.3);
    if (m.in_obstacle(z)) continue;
    EXPECT_NEAR(std::abs(m(z)), 1.0, 1e-9);
  }
}
