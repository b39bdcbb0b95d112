#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sawlab/brownian.hpp"
#include "sawlab/conformal.hpp"
#include "sawlab/error.hpp"
#include "sawlab/harness.hpp"
#include "sawlab/stats.hpp"

using namespace sawlab;
using namespace sawlab::brownian;

constexpr double kPi = std::numbers::pi;

namespace {

PlanarCurve circle(double r, int n, Complex c = 0.0) {
  PlanarCurve p;
  for (int k = 0; k <= n; ++k) p.points.push_back(c + std::polar(r, 2 * kPi * k / n));
  p.points.back() = p.points.front();
  return p;
}

}  // namespace

TEST(Excursion, StaysInUpperHalfPlane) {
  auto rng = make_rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto c = excursion(1.0, 200, rng);
    EXPECT_EQ(c.points[0], Complex(0.0, 0.0));
    for (std::size_t k = 1; k < c.size(); ++k) EXPECT_GT(c.points[k].imag(), 0.0);
  }
}

TEST(Excursion, SecondMomentOfHeight) {
  auto rng = make_rng(2);
  const int runs = 100000;
  std::vector<double> y2(runs);
  for (int i = 0; i < runs; ++i) {
    const double y = excursion(1.0, 4, rng).points.back().imag();
    y2[i] = y * y;
  }
  const double m = stats::mean(y2);
  const double se = std::sqrt(stats::variance(y2) / runs);
  EXPECT_NEAR(m, 3.0, 3.0 * se);
}

TEST(Excursion, AvoidsSlitWithProbabilityDprime) {
  const auto slit = conformal::SlitMap::vertical_slit(-1.0, 1.0);
  const auto t = excursion_tally(slit, 4000, 9);
  const auto e = excursion_avoidance(t);
  EXPECT_EQ(t.unresolved, 0u);
  EXPECT_NEAR(e.value, slit.dprime_at_zero(), 3.0 * e.std_error + 0.02);
}

TEST(Loop, ClosedWithBridgeMarginals) {
  auto rng = make_rng(3);
  const int runs = 100000;
  std::vector<double> x(runs), y(runs);
  for (int i = 0; i < runs; ++i) {
    const auto c = rooted_loop(1.0, 2, rng);
    ASSERT_EQ(c.points.front(), c.points.back());
    x[i] = c.points[1].real();
    y[i] = c.points[1].imag();
  }
  for (const auto* v : {&x, &y}) {
    const double se_mean = std::sqrt(0.25 / runs);
    EXPECT_NEAR(stats::mean(*v), 0.0, 3.0 * se_mean);
    // Var of a sample variance of normals: 2 s^4 / (n - 1).
    const double se_var = std::sqrt(2.0 * 0.0625 / (runs - 1));
    EXPECT_NEAR(stats::variance(*v), 0.25, 3.0 * se_var);
  }
}

TEST(Loop, DurationsLogUniform) {
  auto rng = make_rng(4);
  const double lo = 0.01, hi = 100.0;
  const int runs = 100000;
  std::vector<double> logs(runs), scaled(runs);
  for (int i = 0; i < runs; ++i) {
    const auto d = loop_duration_sampler(lo, hi, rng);
    EXPECT_NEAR(d.weight, 1.0 / d.duration, 1e-12 / d.duration);
    logs[i] = std::log(d.duration);
    scaled[i] = std::log(4.0 * d.duration);
  }
  const double a = std::log(lo), b = std::log(hi);
  EXPECT_GT(stats::ks_one_sample(logs, [&](double v) {
              return std::clamp((v - a) / (b - a), 0.0, 1.0);
            }).p_value,
            0.01);
  // Pushing through t -> r^2 t shifts the window.
  const double a4 = std::log(4 * lo), b4 = std::log(4 * hi);
  EXPECT_GT(stats::ks_one_sample(scaled, [&](double v) {
              return std::clamp((v - a4) / (b4 - a4), 0.0, 1.0);
            }).p_value,
            0.01);
}

TEST(Loop, DilationInvariantFunctionalUnderRescaling) {
  // diam / sqrt(duration) has one law on every duration window.
  auto est = [](double lo, double hi, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::vector<double> f;
    for (int i = 0; i < 4000; ++i) {
      const auto d = loop_duration_sampler(lo, hi, rng);
      f.push_back(rooted_loop(d.duration, 200, rng).diameter() /
                  std::sqrt(d.duration));
    }
    return std::pair{stats::mean(f), std::sqrt(stats::variance(f) / f.size())};
  };
  const auto [m1, s1] = est(1.0, 4.0, 5);
  const auto [m2, s2] = est(4.0, 16.0, 6);
  EXPECT_NEAR(m1, m2, 3.0 * std::hypot(s1, s2));
}

TEST(Hull, SinglePointIsOneCell) {
  PlanarCurve p;
  p.points = {Complex(0.3, 0.4)};
  const auto g = hull_fill({p}, 0.1);
  EXPECT_EQ(g.count(), 1u);
  EXPECT_TRUE(g.contains(Complex(0.3, 0.4)));
}

TEST(Hull, CircleAreaAndIdempotence) {
  const auto g = hull_fill({circle(1.0, 2000)}, 0.01);
  const double area = double(g.count()) * 0.01 * 0.01;
  EXPECT_NEAR(area, kPi, 0.02 * kPi);
  const auto f = frontier(g);
  const auto g2 = hull_fill({f.curve}, 0.01);
  EXPECT_EQ(g2.count(), g.count());
}

TEST(Hull, MonotoneUnderUnion) {
  auto rng = make_rng(13);
  const auto a = rooted_loop(1.0, 5000, rng), b = rooted_loop(1.0, 5000, rng);
  const double res = 0.01;
  const auto ga = hull_fill({a}, res), gab = hull_fill({a, b}, res);
  int missing = 0;
  for (int j = 0; j < ga.height(); ++j)
    for (int i = 0; i < ga.width(); ++i)
      if (ga.filled(i, j) && !gab.contains(ga.cell_center(i, j))) ++missing;
  EXPECT_EQ(missing, 0);
  EXPECT_GE(gab.count(), ga.count());
}

TEST(Frontier, SquarePerimeter) {
  GridRegion g(1.0, 0.0, 0.0, 14, 14);
  for (int j = 2; j < 12; ++j)
    for (int i = 2; i < 12; ++i) g.set(i, j);
  const auto f = frontier(g);
  EXPECT_FALSE(f.flagged);
  double len = 0.0;
  for (std::size_t k = 1; k < f.curve.size(); ++k)
    len += std::abs(f.curve.points[k] - f.curve.points[k - 1]);
  // Centres of the boundary cells: side 9, perimeter 36, within one layer.
  EXPECT_NEAR(len, 36.0, 8.0);
}

TEST(Frontier, RecoversSimpleClosedCurve) {
  const double res = 0.01;
  const auto c = circle(1.0, 4000, Complex(0.2, -0.1));
  const auto f = frontier(hull_fill({c}, res));
  EXPECT_LE(harness::curve_hausdorff(f.curve, c), 2.0 * res);
}

TEST(Frontier, RleRoundTripShape) {
  GridRegion g(1.0, 0.0, 0.0, 4, 2);
  g.set(1, 0);
  g.set(2, 0);
  g.set(0, 1);
  EXPECT_FALSE(g.to_rle().empty());
  EXPECT_EQ(g.count(), 3u);
}

TEST(BoxDimension, Calibration) {
  PlanarCurve seg;
  seg.points = {Complex(0.0, 0.0), Complex(0.6, 0.8)};
  EXPECT_NEAR(box_dimension(seg, dyadic_scales(1.0, 4, 11)).value, 1.0, 0.02);
  GridRegion sq(1.0 / 256, 0.0, 0.0, 256, 256);
  for (int j = 0; j < 256; ++j)
    for (int i = 0; i < 256; ++i) sq.set(i, j);
  EXPECT_NEAR(box_dimension(sq, dyadic_scales(1.0, 1, 8)).value, 2.0, 0.05);
}

TEST(BoxDimension, RejectsNarrowWindow) {
  PlanarCurve seg;
  seg.points = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
  EXPECT_THROW(box_dimension(seg, dyadic_scales(1.0, 2, 4)), InvalidArgument);
}

TEST(NonDisconnection, DecreasesWithEps) {
  double prev = 1.0;
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto e = non_disconnection_probability(eps, 1500, 3);
    EXPECT_LT(e.probability.value, prev);
    prev = e.probability.value;
  }
}

TEST(NonDisconnection, AcceptedPairIsSeparated) {
  auto rng = make_rng(12);
  const auto p = non_disconnecting_pair(0.2, 500, rng);
  ASSERT_EQ(p.estimate.accepted, 1u);
  EXPECT_NEAR(std::abs(p.pair.first.points.front()), 0.2, 1e-9);
  EXPECT_GE(std::abs(p.pair.second.points.back()), 5.0 - 1e-9);
  EXPECT_THROW(non_disconnecting_pair(1.5, 10, rng), InvalidArgument);
}
