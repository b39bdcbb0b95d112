#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sawlab/conformal.hpp"
#include "sawlab/error.hpp"
#include "sawlab/sle.hpp"
#include "sawlab/stats.hpp"

using namespace sawlab;
using namespace sawlab::sle;

constexpr double kPi = std::numbers::pi;

namespace {

DrivingPath constant_path(double T, int N, GridKind g = GridKind::uniform) {
  DrivingPath p;
  p.kappa = 0.0;
  p.times = make_time_grid(g, T, N, 1e-6);
  p.values.assign(p.times.size(), 0.0);
  return p;
}

std::size_t index_of_time(const PlanarCurve& c, double t) {
  return std::find(c.times.begin(), c.times.end(), t) - c.times.begin();
}

}  // namespace

TEST(Grid, Shapes) {
  for (auto g : {GridKind::uniform, GridKind::quadratic, GridKind::geometric}) {
    const auto t = make_time_grid(g, 4.0, 50, 1e-3);
    ASSERT_EQ(t.size(), 51u);
    EXPECT_EQ(t.front(), 0.0);
    EXPECT_EQ(t.back(), 4.0);
    EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
  }
  EXPECT_THROW(make_time_grid(GridKind::geometric, 1.0, 10, 2.0), InvalidArgument);
  EXPECT_THROW(make_time_grid(GridKind::uniform, 1.0, 0), InvalidArgument);
}

TEST(Chordal, ZeroDrivingGivesVerticalLine) {
  for (auto g : {GridKind::uniform, GridKind::geometric}) {
    const auto c = chordal_trace(constant_path(1.0, 500, g));
    for (std::size_t k = 0; k < c.size(); ++k)
      EXPECT_NEAR(std::abs(c.points[k] - Complex(0.0, 2.0 * std::sqrt(c.times[k]))),
                  0.0, 1e-9);
  }
}

TEST(Chordal, TraceInClosedHalfPlane) {
  auto rng = make_rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto c = chordal_trace(8.0 / 3.0, 1.0, 400, rng);
    for (const auto& z : c.points) EXPECT_GE(z.imag(), -1e-12);
  }
}

TEST(Chordal, BrownianScaling) {
  // A trace at horizon T scaled by r has the law of a trace at r^2 T.
  const int N = 100, runs = 10000;
  const double r = 2.0;
  std::vector<double> a(runs), b(runs);
  auto rng = make_rng(12);
  for (int i = 0; i < runs; ++i) {
    a[i] = r * std::abs(chordal_trace(8.0 / 3.0, 1.0, N, rng).points.back());
    b[i] = std::abs(chordal_trace(8.0 / 3.0, r * r, N, rng).points.back());
  }
  EXPECT_GT(stats::ks_two_sample(a, b).p_value, 0.01);
}

TEST(Chordal, ForwardMapInvertsTrace) {
  auto rng = make_rng(6);
  const auto p = brownian_driving(8.0 / 3.0, make_time_grid(GridKind::uniform, 1.0, 200), rng);
  // g_T sends the tip to W_T; the square-root branch point costs accuracy.
  const Complex tip = chordal_trace(p).points.back();
  const Complex img = chordal_forward_map(p, tip);
  EXPECT_NEAR(img.real(), p.values.back(), 1e-6);
  EXPECT_NEAR(img.imag(), 0.0, 1e-6);
}

TEST(Chordal, HalfPlaneCapacityIsTwoT) {
  auto rng = make_rng(7);
  const auto p = brownian_driving(8.0 / 3.0, make_time_grid(GridKind::uniform, 1.0, 400), rng);
  EXPECT_NEAR(chordal_capacity(p, 30.0), 2.0, 1e-3);
  EXPECT_NEAR(chordal_capacity(constant_path(3.0, 100), 30.0), 6.0, 1e-3);
}

TEST(Radial, StartsOnCircle) {
  auto rng = make_rng(1);
  const auto p = brownian_driving(8.0 / 3.0, make_time_grid(GridKind::uniform, 1.0, 100),
                                  rng, 0.7);
  const auto c = radial_trace(p);
  EXPECT_NEAR(std::abs(c.points[0] - std::polar(1.0, 0.7)), 0.0, 1e-14);
  for (const auto& z : c.points) EXPECT_LE(std::abs(z), 1.0 + 1e-12);
}

TEST(Radial, ZeroDrivingRunsAlongRealAxis) {
  const auto c = radial_trace(constant_path(3.0, 300));
  for (std::size_t k = 0; k < c.size(); ++k) {
    EXPECT_NEAR(c.points[k].imag(), 0.0, 1e-9);
    EXPECT_GT(c.points[k].real(), 0.0);
    if (k) EXPECT_LT(std::abs(c.points[k]), std::abs(c.points[k - 1]));
  }
}

TEST(Radial, DerivativeNormalisation) {
  auto rng = make_rng(3);
  for (double t : {0.5, 1.0}) {
    const auto p = brownian_driving(8.0 / 3.0, make_time_grid(GridKind::uniform, t, 400), rng);
    const double h = 1e-6;
    const Complex d = (radial_forward_map(p, Complex(h, 0.0)) -
                       radial_forward_map(p, Complex(-h, 0.0))) / (2 * h);
    EXPECT_NEAR(std::abs(d), std::exp(t), 1e-4 * std::exp(t));
  }
}

TEST(FullPlane, StartNearOriginAndRotationInvariant) {
  const double K = -5.0;
  const int runs = 10000;
  std::vector<double> angle(runs), mod5(runs), mod7(runs);
  auto rng = make_rng(31);
  for (int i = 0; i < runs; ++i) {
    const auto c = full_plane_trace(8.0 / 3.0, K, 0.0, 100, rng);
    if (i < 100) EXPECT_LE(std::abs(c.points.front()), std::exp(K + 1.0));
    const auto z0 = c.points[index_of_time(c, 0.0)];
    angle[i] = std::fmod(std::arg(z0) + 2 * kPi, 2 * kPi);
    mod5[i] = std::abs(z0);
  }
  EXPECT_GT(stats::ks_one_sample(angle, [](double x) { return x / (2 * kPi); })
                .p_value,
            0.01);
  // Same step size from K = -7.
  for (int i = 0; i < runs; ++i) {
    const auto c = full_plane_trace(8.0 / 3.0, -7.0, 0.0, 140, rng);
    mod7[i] = std::abs(c.points[index_of_time(c, 0.0)]);
  }
  EXPECT_GT(stats::ks_two_sample(mod5, mod7).p_value, 0.01);
}

TEST(Avoidance, EmptyObstacleListAndDirectHit) {
  auto rng = make_rng(2);
  std::vector<PlanarCurve> traces{chordal_trace(8.0 / 3.0, 1.0, 100, rng)};
  const auto e = avoidance_probability(traces, {});
  EXPECT_EQ(e.primary.value, 1.0);

  const auto slit = conformal::SlitMap::vertical_slit(-1.0, 1.0);
  PlanarCurve through;
  through.points = {Complex(0, 0), Complex(-2.0, 0.5), Complex(-3.0, 30.0)};
  EXPECT_TRUE(classify_avoidance(through, slit).hit_polyline);
  PlanarCurve away;
  away.points = {Complex(0, 0), Complex(1.0, 5.0), Complex(2.0, 30.0)};
  EXPECT_FALSE(classify_avoidance(away, slit).hit_polyline);
}

TEST(Avoidance, KappaSixBelowRestrictionPrediction) {
  const auto slit = conformal::SlitMap::vertical_slit(-1.0, 1.0);
  ChordalEnsembleConfig c;
  c.kappa = 6.0;
  c.count = 2000;
  c.N = 600;
  c.seed = 5;
  const auto e = chordal_restriction_test(c, slit);
  EXPECT_LT(e.primary.value + 3.0 * e.primary.std_error, e.prediction);
}

TEST(Avoidance, RadialMonotoneInDelta) {
  std::vector<PlanarCurve> traces;
  auto rng = make_rng(8);
  for (int i = 0; i < 300; ++i)
    traces.push_back(radial_trace(8.0 / 3.0, 6.0, 200, rng, GridKind::geometric));
  double prev = 1.0;
  for (double d : {1e-4, 0.1, 0.3, 0.6}) {
    const conformal::RadialRestrictionMap m(kPi, d);
    const double p = radial_avoidance_probability(traces, m).primary.value;
    if (d == 1e-4) EXPECT_GE(p, 0.98);
    EXPECT_LE(p, prev);
    prev = p;
  }
}

TEST(Simplicity, StraightTraceHasPositiveGap) {
  EXPECT_GT(simplicity_gap(chordal_trace(constant_path(1.0, 200))), 0.0);
}
