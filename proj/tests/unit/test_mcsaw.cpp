#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sawlab/error.hpp"
#include "sawlab/lattice.hpp"
#include "sawlab/mcsaw.hpp"

using namespace sawlab;
using namespace sawlab::mcsaw;

namespace {

int find_symmetry(std::vector<int> perm, std::vector<int> sign) {
  const auto syms = lattice_symmetries(2);
  for (int i = 0; i < int(syms.size()); ++i)
    if (syms[i].perm == perm && syms[i].sign == sign) return i;
  return -1;
}

}  // namespace

TEST(Symmetries, GroupOrder) {
  EXPECT_EQ(lattice_symmetries(2).size(), 8u);
  EXPECT_EQ(lattice_symmetries(3).size(), 48u);
  const auto id = lattice_symmetries(2)[0];
  EXPECT_EQ(id.perm, (std::vector<int>{0, 1}));
  EXPECT_EQ(id.sign, (std::vector<int>{1, 1}));
}

TEST(Pivot, IdentityAlwaysAccepted) {
  PivotChain c(10);
  auto rng = make_rng(1);
  c.thermalize(50, rng);
  const auto before = c.coords();
  for (int p = 0; p < 10; ++p) {
    EXPECT_TRUE(c.propose(p, 0).accepted);
    EXPECT_EQ(c.coords(), before);
  }
}

TEST(Pivot, RotationMakesLShape) {
  PivotChain c(2);
  const int rot = find_symmetry({1, 0}, {1, -1});
  ASSERT_GE(rot, 0);
  EXPECT_TRUE(c.propose(1, rot).accepted);
  EXPECT_EQ(c.coords(), (std::vector<Coord>{0, 0, 1, 0, 1, 1}));
}

TEST(Pivot, RejectsCollision) {
  // Reflecting E,E about site 1 sends site 2 onto site 0.
  PivotChain c(2);
  const int flip_x = find_symmetry({0, 1}, {-1, 1});
  ASSERT_GE(flip_x, 0);
  const auto before = c.coords();
  EXPECT_FALSE(c.propose(1, flip_x).accepted);
  EXPECT_EQ(c.coords(), before);
}

TEST(Pivot, StaysSelfAvoidingAndInDomain) {
  PivotChain c(60, 2, Domain::half_plane);
  auto rng = make_rng(9);
  for (int s = 0; s < 3000; ++s) {
    c.step(rng);
    if (s % 100) continue;
    EXPECT_TRUE(c.in_half_space(1, 1));
    std::set<oracle::Pt> seen;
    const auto& xy = c.coords();
    for (int k = 0; k <= 60; ++k) seen.insert({xy[2 * k], xy[2 * k + 1]});
    EXPECT_EQ(seen.size(), 61u);
  }
}

TEST(Pivot, UniformOnSixStepWalks) {
  const auto u = pivot_uniformity(6, 1'000'000, 100, 4);
  EXPECT_EQ(u.walks, oracle::count_saws(6));
  EXPECT_GT(u.test.p_value, 0.01);
}

TEST(Fit, StraightWalkFamilyGivesOne) {
  std::vector<LengthSummary> pts;
  for (int n : {100, 200, 400, 800}) {
    LengthSummary s;
    s.n = n;
    s.value.value = double(n) * n;  // R^2 of the straight walk
    s.value.std_error = 1e-9;
    pts.push_back(s);
  }
  EXPECT_NEAR(fit_scaling_exponent(pts, 2.0).value, 1.0, 1e-12);
}

TEST(Estimate, RandomWalkModeNuHalf) {
  SamplingConfig c;
  c.lengths = {50, 100, 200, 400};
  c.samples = 8000;
  c.mode = ChainMode::random_walk;
  const auto e = estimate_nu(c);
  EXPECT_NEAR(e.estimate.value, 0.5, 0.03);
}

TEST(Estimate, RandomWalkModeRhoHalf) {
  SamplingConfig c;
  c.lengths = {50, 100, 200, 400};
  c.samples = 20000;
  c.mode = ChainMode::random_walk;
  const auto e = estimate_rho(c);
  EXPECT_NEAR(e.estimate.value, 0.5, 0.06);
}

TEST(Estimate, HalfPlaneFractionMatchesExactCounts) {
  SamplingConfig c;
  c.lengths = {8, 10, 12};
  c.samples = 40000;
  c.seed = 21;
  const auto e = estimate_rho(c);
  for (const auto& p : e.per_length) {
    const double exact = double(lattice::count_half_space(p.n)) /
                         double(lattice::count_saws(p.n));
    EXPECT_NEAR(p.value.value, exact, 4.0 * p.value.std_error + 1e-3) << p.n;
  }
}

TEST(Estimate, RejectsShortLengthGrid) {
  SamplingConfig c;
  c.lengths = {10, 20};
  EXPECT_THROW(estimate_nu(c), InvalidArgument);
}

TEST(Exponents, ConjecturedValues) {
  const auto s = exponent_algebra({3, 4}, {43, 32}, {25, 64});
  EXPECT_EQ(s.a, Rational(5, 8));
  EXPECT_EQ(s.b, Rational(5, 48));
  EXPECT_EQ(s.a_prime, Rational(2));
  EXPECT_EQ(s.b_prime, Rational(2, 3));
  EXPECT_EQ(s.alpha, Rational(1, 2));
}

TEST(Exponents, ParseRational) {
  EXPECT_EQ(parse_rational("0.75"), Rational(3, 4));
  EXPECT_EQ(parse_rational("1.34375"), Rational(43, 32));
  EXPECT_EQ(parse_rational("25/64"), Rational(25, 64));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_THROW(parse_rational("x/3"), InvalidArgument);
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_EQ(to_string(Rational(5, 48)), "5/48");
}

TEST(Mass, Targets) {
  const std::vector<double> radii{1.0, 2.0, 4.0};
  EXPECT_NEAR(diameter_mass_scaling(MassKind::sap_half, radii, 10).target, -2.0,
              1e-12);
  EXPECT_NEAR(diameter_mass_scaling(MassKind::saw_half, radii, 10).target,
              61.0 / 48.0, 1e-12);
  EXPECT_NEAR(diameter_mass_scaling(MassKind::sap_free, radii, 10).target,
              -2.0 / 3.0, 1e-12);
}
