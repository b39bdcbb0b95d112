#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sawlab/error.hpp"
#include "sawlab/lattice.hpp"
#include "sawlab/stats.hpp"

using namespace sawlab;
using namespace sawlab::lattice;

namespace {

Walk walk(std::initializer_list<Direction> d) {
  std::vector<Direction> v(d);
  return Walk::from_directions(2, v);
}

oracle::Path to_path(const Walk& w) {
  oracle::Path p;
  for (std::size_t i = 0; i < w.num_points(); ++i)
    p.push_back({w.coord(i, 0), w.coord(i, 1)});
  return p;
}

}  // namespace

TEST(Walk, RejectsSelfIntersection) {
  EXPECT_THROW(walk({kEast, kWest}), InvalidArgument);
  EXPECT_THROW(Walk(2, {0, 0, 2, 0}), InvalidArgument);
}

TEST(Walk, PolygonClosure) {
  std::vector<Direction> sq{kEast, kNorth, kWest, kSouth};
  const auto p = Walk::from_directions(2, sq, WalkKind::polygon);
  EXPECT_EQ(p.length(), 4u);
  std::vector<Direction> open3{kEast, kNorth, kWest};
  EXPECT_THROW(Walk::from_directions(2, open3, WalkKind::polygon),
               InvalidArgument);
}

TEST(Counts, SmallValues) {
  EXPECT_EQ(count_saws(0), 1u);
  EXPECT_EQ(count_saws(1), 4u);
  EXPECT_EQ(count_saws(4), oracle::count_saws(4));
  EXPECT_EQ(count_saws(4), 100u);
}

TEST(Counts, MatchOracleUpToTen) {
  const auto c = saw_counts(10);
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(c[n], oracle::count_saws(n)) << n;
}

TEST(Counts, ThreeDimensions) {
  // 6, 30, 150 on the cubic lattice.
  EXPECT_EQ(count_saws(1, 3), 6u);
  EXPECT_EQ(count_saws(2, 3), 30u);
  EXPECT_EQ(count_saws(3, 3), 150u);
}

TEST(Counts, Submultiplicative) {
  const auto c = saw_counts(16);
  for (int m = 1; m <= 16; ++m)
    for (int n = 1; m + n <= 16; ++n) EXPECT_LE(c[m + n], c[m] * c[n]);
}

TEST(Counts, CapRaisesResourceLimit) {
  EXPECT_THROW(count_saws(21), ResourceLimit);
  EnumerationLimits tight;
  tight.saw_cap = 5;
  EXPECT_THROW(count_saws(6, 2, tight), ResourceLimit);
}

TEST(Saps, SmallLengths) {
  const auto s4 = count_saps(4);
  EXPECT_EQ(s4.rooted, 8u);
  EXPECT_EQ(s4.classes, 1u);
  EXPECT_EQ(count_saps(2).rooted, 0u);
  const auto s6 = count_saps(6);
  EXPECT_EQ(s6.rooted, oracle::count_rooted_cycles(6));
  EXPECT_EQ(s6.classes, s6.rooted / 12);
  EXPECT_EQ(s6.classes, 2u);
  EXPECT_EQ(count_saps(8).rooted, oracle::count_rooted_cycles(8));
  for (int n2 = 4; n2 <= 12; n2 += 2) {
    const auto s = count_saps(n2);
    EXPECT_EQ(s.rooted % (2 * n2), 0u);
  }
}

TEST(Saps, OddLengthRejected) { EXPECT_THROW(count_saps(5), InvalidArgument); }

TEST(HalfSpace, Counts) {
  EXPECT_EQ(count_half_space(1), 1u);
  EXPECT_EQ(count_half_space(2), 3u);
  for (int n = 3; n <= 8; ++n)
    EXPECT_EQ(count_half_space(n), oracle::count_half_space(n)) << n;
}

TEST(Renewal, Examples) {
  EXPECT_EQ(renewal_times(walk({kEast, kEast, kEast})), (std::vector<int>{1, 2}));
  EXPECT_TRUE(renewal_times(walk({kEast})).empty());
  // j = 1 fails: pi1 w_1 = 1 is not below pi1 w_2 = 1.
  EXPECT_EQ(renewal_times(walk({kEast, kNorth, kEast})), (std::vector<int>{2}));
  EXPECT_EQ(oracle::renewal_times(to_path(walk({kEast, kNorth, kEast}))),
            (std::vector<int>{2}));
}

TEST(Renewal, RejectsWalkOutsideHalfSpace) {
  EXPECT_THROW(renewal_times(walk({kNorth, kEast})), InvalidArgument);
}

TEST(Renewal, MatchesOracleOnAllHalfSpaceWalks) {
  for (int n = 1; n <= 7; ++n)
    oracle::for_each_saw(n, [&](const oracle::Path& p) {
      if (!oracle::in_half_space(p)) return;
      std::vector<Coord> flat;
      for (auto [x, y] : p) {
        flat.push_back(x);
        flat.push_back(y);
      }
      const Walk w(2, flat);
      EXPECT_EQ(renewal_times(w), oracle::renewal_times(p));
      EXPECT_EQ(is_bridge(w), oracle::is_bridge(p));
    });
}

TEST(Bridges, Conventions) {
  EXPECT_EQ(count_irreducible_bridges(1), 1u);
  // E,N ends at pi1 = 1 = pi1 w_1.
  EXPECT_TRUE(is_bridge(walk({kEast, kNorth})));
  EXPECT_FALSE(is_bridge(walk({kEast, kNorth}), BridgeConvention::first_step_strict));
  for (int k = 1; k <= 8; ++k)
    EXPECT_EQ(count_irreducible_bridges(k), oracle::count_irreducible_bridges(k))
        << k;
}

TEST(Census, FirstRenewalIdentityAndBounds) {
  const auto c = half_space_census(12);
  for (int n = 2; n <= 12; ++n) {
    std::uint64_t decomposed = 0;
    for (int k = 1; k < n; ++k) {
      EXPECT_EQ(c.first_renewal[n][k], c.irreducible[k] * c.half_counts[n - k]);
      decomposed += c.irreducible[k] * c.half_counts[n - k];
      EXPECT_GE(c.half_counts[n], decomposed);
    }
  }
}

TEST(Kesten, RootsAndPartialSums) {
  const auto t = BridgeTable::build(14);
  EXPECT_NEAR(kesten_beta(t, 1), 1.0, 1e-12);
  double prev = 0.0;
  for (int K = 1; K <= 14; ++K) {
    const double b = kesten_beta(t, K);
    EXPECT_NEAR(kesten_partial_sum(t, K, b), 1.0, 1e-10);
    EXPECT_LT(kesten_partial_sum(t, K, 2.638), 1.0);
    EXPECT_LE(b, 2.7);
    if (K > 1) {
      EXPECT_GT(b, prev);
      EXPECT_GT(kesten_partial_sum(t, K, 2.638), kesten_partial_sum(t, K - 1, 2.638));
    }
    prev = b;
  }
  for (int n = 1; n <= 14; ++n) {
    EXPECT_LE(t.irreducible_count(n), t.half_count(n));
    EXPECT_LE(t.half_count(n), t.saw_count(n));
  }
}

TEST(Sampler, SingleBridgeLengthGivesStraightWalk) {
  const auto t = BridgeTable::build(1);
  const HalfSpaceSampler s(t);
  auto rng = make_rng(3);
  const auto w = sample_half_space_saw(25, s, rng);
  EXPECT_EQ(w.length(), 25u);
  for (std::size_t i = 0; i < w.num_points(); ++i) {
    EXPECT_EQ(w.coord(i, 0), Coord(i));
    EXPECT_EQ(w.coord(i, 1), 0);
  }
}

TEST(Sampler, WeightsNormalised) {
  const auto t = BridgeTable::build(10);
  const HalfSpaceSampler s(t);
  double sum = 0.0;
  for (double w : s.weights()) {
    EXPECT_GE(w, 0.0);
    sum += w;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Sampler, FirstBridgeLengthLaw) {
  const auto t = BridgeTable::build(8);
  const HalfSpaceSampler s(t);
  auto rng = make_rng(11);
  const std::size_t draws = 100000;
  std::vector<double> obs(8, 0.0), expect(8, 0.0);
  for (std::size_t i = 0; i < draws; ++i) obs[s.draw_length(rng) - 1] += 1.0;
  for (int k = 0; k < 8; ++k) expect[k] = s.weights()[k] * double(draws);
  // Merge bins with small expectation.
  std::vector<double> o, e;
  double ot = 0, et = 0;
  for (int k = 0; k < 8; ++k) {
    ot += obs[k];
    et += expect[k];
    if (et >= 20.0) {
      o.push_back(ot);
      e.push_back(et);
      ot = et = 0;
    }
  }
  if (et > 0) {
    o.back() += ot;
    e.back() += et;
  }
  EXPECT_GT(stats::chi_square(o, e).p_value, 1e-3);
}

TEST(Sampler, OutputIsBridgeAndSelfAvoiding) {
  const auto t = BridgeTable::build(10);
  const HalfSpaceSampler s(t);
  auto rng = make_rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto w = sample_half_space_saw(60, s, rng);
    EXPECT_GE(w.length(), 60u);
    EXPECT_TRUE(w.in_half_space());
    EXPECT_TRUE(is_bridge(w));
    const auto p = to_path(w);
    EXPECT_EQ(std::set<oracle::Pt>(p.begin(), p.end()).size(), p.size());
  }
}

TEST(WeightedSampler, LengthLawAndMonotoneMean) {
  const WeightedHalfSpaceSampler s(10);
  auto rng = make_rng(17);
  EXPECT_THROW(sample_weighted_half_space(s.critical_weight() * 1.01, s, rng),
               InvalidArgument);
  int empty = 0;
  for (int i = 0; i < 2000; ++i)
    empty += sample_weighted_half_space(1e-4, s, rng).length() == 0;
  EXPECT_GT(empty, 1990);

  std::vector<double> means;
  for (double a : {0.1, 0.2, 0.3}) {
    double sum = 0.0;
    for (int i = 0; i < 40000; ++i)
      sum += double(sample_weighted_half_space(a, s, rng).length());
    means.push_back(sum / 40000.0);
  }
  EXPECT_LT(means[0], means[1]);
  EXPECT_LT(means[1], means[2]);

  // P(n) proportional to a^n upsilon_n for short walks.
  const double a = 0.3;
  const std::size_t draws = 200000;
  std::vector<double> hist(9, 0.0);
  std::size_t short_walks = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto n = sample_weighted_half_space(a, s, rng).length();
    if (n <= 8) {
      hist[n] += 1.0;
      ++short_walks;
    }
  }
  std::vector<double> w(9);
  double z = 0.0;
  for (int n = 0; n <= 8; ++n) {
    w[n] = std::pow(a, n) * double(n == 0 ? 1 : oracle::count_half_space(n));
    z += w[n];
  }
  for (auto& v : w) v *= double(short_walks) / z;
  EXPECT_GT(stats::chi_square(hist, w).p_value, 1e-3);
}
