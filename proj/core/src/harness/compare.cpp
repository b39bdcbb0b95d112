#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "sawlab/brownian.hpp"
#include "sawlab/harness.hpp"
#include "sawlab/mcsaw.hpp"
#include "sawlab/parallel.hpp"
#include "sawlab/sle.hpp"

namespace sawlab::harness {
namespace {

double cross(Complex a, Complex b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

bool proper_cross(Complex a, Complex b, Complex c, Complex d) {
  const double d1 = cross(d - c, a - c), d2 = cross(d - c, b - c);
  const double d3 = cross(b - a, c - a), d4 = cross(b - a, d - a);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 &&
         d2 != 0 && d3 != 0 && d4 != 0;
}

std::string kappa_label(double k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", k);
  return buf;
}

constexpr const char* kFunctionals[3] = {"exit_angle", "rightmost",
                                         "passes_right"};

struct FunctionalSet {
  std::vector<double> f[3];
  std::size_t dropped = 0;

  void add(const ScaleFunctionals& s) {
    if (!s.reached) {
      ++dropped;
      return;
    }
    f[0].push_back(s.exit_angle);
    f[1].push_back(s.rightmost);
    f[2].push_back(s.passes_right);
  }
  void append(const FunctionalSet& o) {
    for (int k = 0; k < 3; ++k) f[k].insert(f[k].end(), o.f[k].begin(), o.f[k].end());
    dropped += o.dropped;
  }
};

FunctionalSet sample_saws(const SawSleConfig& c) {
  constexpr std::size_t kChains = 8;
  std::vector<FunctionalSet> part(kChains);
  parallel_for(kChains, [&](std::size_t ch) {
    auto rng = make_rng(c.seed, 1000 + ch);
    mcsaw::PivotChain chain(c.saw_length, 2, mcsaw::Domain::half_plane);
    chain.thermalize(20 * std::uint64_t(c.saw_length), rng);
    const std::size_t quota =
        c.saw_samples / kChains + (ch < c.saw_samples % kChains ? 1 : 0);
    std::vector<Complex> pts(c.saw_length + 1);
    for (std::size_t s = 0; s < quota; ++s) {
      for (std::size_t t = 0; t < c.saw_thin; ++t) chain.step(rng);
      const auto& xy = chain.coords();
      for (int k = 0; k <= c.saw_length; ++k)
        pts[k] = Complex(xy[2 * k], xy[2 * k + 1]);
      part[ch].add(scale_functionals(pts, c.saw_radius));
    }
  });
  FunctionalSet all;
  for (const auto& p : part) all.append(p);
  return all;
}

FunctionalSet sample_sle(const SawSleConfig& c, double kappa,
                         std::uint64_t stream) {
  const auto grid =
      sle::make_time_grid(sle::GridKind::geometric, c.sle_T, c.sle_N, 1e-4);
  std::vector<ScaleFunctionals> out(c.sle_samples);
  parallel_for(c.sle_samples, [&](std::size_t i) {
    auto rng = make_rng(splitmix64(c.seed + stream), i);
    const auto tr = sle::chordal_trace(sle::brownian_driving(kappa, grid, rng));
    out[i] = scale_functionals(tr.points, c.sle_radius);
  });
  FunctionalSet all;
  for (const auto& s : out) all.add(s);
  return all;
}

void compare_sets(ComparisonReport& r, const std::string& tag,
                  const FunctionalSet& a, const FunctionalSet& b) {
  for (int k = 0; k < 3; ++k) {
    TestRow row;
    row.name = std::string(kFunctionals[k]) + "@" + tag;
    if (a.f[k].empty() || b.f[k].empty()) {
      row.p_value = std::numeric_limits<double>::quiet_NaN();
      r.flagged = true;
      r.notes.push_back(row.name + ": empty sample");
    } else {
      const auto t = stats::ks_two_sample(a.f[k], b.f[k]);
      row.statistic = t.statistic;
      row.p_value = t.p_value;
    }
    row.n_a = a.f[k].size();
    row.n_b = b.f[k].size();
    r.tests.push_back(row);
  }
}

Table summary_table(const std::vector<std::pair<std::string, const FunctionalSet*>>& sets) {
  Table t;
  t.name = "functional_means";
  t.columns = {"source", "n", "dropped", "exit_angle", "rightmost",
               "passes_right"};
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto& f = *sets[s].second;
    t.rows.push_back({double(s), double(f.f[0].size()), double(f.dropped),
                      stats::mean(f.f[0]), stats::mean(f.f[1]),
                      stats::mean(f.f[2])});
  }
  return t;
}

void check_config(const SawSleConfig& c) {
  if (c.saw_length < 10) throw InvalidArgument("saw_length must be >= 10");
  if (c.saw_samples < 2 || c.sle_samples < 2)
    throw InvalidArgument("comparison needs >= 2 samples per source");
  if (!(c.saw_radius > 1.0) || !(c.sle_radius > 0.0))
    throw InvalidArgument("comparison radii must be positive");
  if (c.saw_thin < 1) throw InvalidArgument("saw_thin must be >= 1");
}

}  // namespace

double curve_hausdorff(const PlanarCurve& a, const PlanarCurve& b) {
  if (a.empty() || b.empty())
    throw InvalidArgument("curve_hausdorff: curves must be nonempty");
  auto directed = [](const PlanarCurve& p, const PlanarCurve& q) {
    double worst = 0.0;
    for (const Complex& z : p.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& w : q.points) {
        best = std::min(best, std::norm(z - w));
        if (best <= worst) break;
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

ScaleFunctionals scale_functionals(std::span<const Complex> pts, double R) {
  ScaleFunctionals s;
  const std::size_t k = geom::first_exit_index(pts, R);
  if (k == 0 || k >= pts.size()) return s;
  s.reached = true;
  const Complex exit = geom::first_exit_point(pts, R);
  s.exit_angle = std::clamp(std::arg(exit), 0.0, std::numbers::pi);
  double right = exit.real();
  for (std::size_t j = 0; j < k; ++j) right = std::max(right, pts[j].real());
  s.rightmost = right / R;
  const Complex p(0.0, R / 2), q(-R / 2, 0.0);
  int crossings = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    const Complex b = j == k ? exit : pts[j];
    crossings += proper_cross(pts[j - 1], b, p, q);
  }
  s.passes_right = crossings % 2 == 0 ? 1.0 : 0.0;
  return s;
}

const TestRow& ComparisonReport::test(const std::string& name) const {
  for (const auto& t : tests)
    if (t.name == name) return t;
  throw InvalidArgument("report has no test named " + name);
}

const EstimateRow& ComparisonReport::estimate(const std::string& name) const {
  for (const auto& e : estimates)
    if (e.name == name) return e;
  throw InvalidArgument("report has no estimate named " + name);
}

ComparisonReport saw_vs_sle_comparison(const SawSleConfig& c) {
  check_config(c);
  ComparisonReport r;
  r.experiment = "saw-vs-sle";
  r.seed = c.seed;
  const auto saw = sample_saws(c);
  std::vector<FunctionalSet> sles;
  for (std::size_t i = 0; i < c.kappas.size(); ++i)
    sles.push_back(sample_sle(c, c.kappas[i], i + 1));
  std::vector<std::pair<std::string, const FunctionalSet*>> sets{{"saw", &saw}};
  for (std::size_t i = 0; i < c.kappas.size(); ++i) {
    compare_sets(r, "kappa=" + kappa_label(c.kappas[i]), saw, sles[i]);
    sets.emplace_back("sle", &sles[i]);
  }
  r.tables.push_back(summary_table(sets));
  if (saw.dropped > 0) {
    r.flagged = true;
    r.notes.push_back(std::to_string(saw.dropped) +
                      " SAWs never left the comparison radius");
  }
  r.notes.push_back("SAW length " + std::to_string(c.saw_length) +
                    ", radius " + std::to_string(c.saw_radius) +
                    " lattice units; residual lattice and finite-length "
                    "effects are not corrected");
  r.notes.push_back("agreement claims use p > 0.01, discrimination p < 1e-3");
  if (c.keep_raw) {
    RawLog log{"functionals", {}};
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto& f = *sets[s].second;
      const std::string src =
          s == 0 ? "saw" : "sle kappa=" + kappa_label(c.kappas[s - 1]);
      for (std::size_t i = 0; i < f.f[0].size(); ++i) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "{\"source\":\"%s\",\"exit_angle\":%.17g,"
                      "\"rightmost\":%.17g,\"passes_right\":%g}",
                      src.c_str(), f.f[0][i], f.f[1][i], f.f[2][i]);
        log.lines.emplace_back(buf);
      }
    }
    r.raw.push_back(std::move(log));
  }
  return r;
}

ComparisonReport saw_split_halves(const SawSleConfig& c) {
  check_config(c);
  ComparisonReport r;
  r.experiment = "saw-split-halves";
  r.seed = c.seed;
  const auto saw = sample_saws(c);
  FunctionalSet a, b;
  for (int k = 0; k < 3; ++k) {
    const auto& v = saw.f[k];
    const std::size_t half = v.size() / 2;
    a.f[k].assign(v.begin(), v.begin() + half);
    b.f[k].assign(v.begin() + half, v.end());
  }
  compare_sets(r, "halves", a, b);
  return r;
}

ComparisonReport eight_vs_five(const EightFiveConfig& c) {
  const auto slit = conformal::SlitMap::vertical_slit(c.x0, c.h);
  ComparisonReport r;
  r.experiment = "eight-vs-five";
  r.seed = c.seed;
  sle::ChordalEnsembleConfig sc;
  sc.count = c.sle_count;
  sc.T = c.sle_T;
  sc.N = c.sle_N;
  sc.t_min = c.sle_t_min;
  sc.grid = sle::GridKind::geometric;
  sc.seed = c.seed;
  const auto sle_est = sle::chordal_restriction_test(sc, slit);
  const auto sle_avoid = static_cast<std::size_t>(
      std::llround(sle_est.primary.value * double(c.sle_count)));
  const auto ex = brownian::excursion_tally(slit, c.excursion_count,
                                            splitmix64(c.seed));
  const double closed = std::pow(slit.dprime_at_zero(), 5);

  EstimateRow a{"sle_eight", stats::power_of_proportion(sle_avoid, c.sle_count, 8),
                closed, true};
  a.estimate.flagged |= sle_est.primary.flagged;
  a.estimate.note = sle_est.primary.note;
  EstimateRow b{"excursion_five",
                stats::power_of_proportion(ex.avoided, ex.runs, 5), closed,
                true};
  EstimateRow z{"closed_form", {}, closed, true};
  z.estimate.value = closed;
  z.estimate.window = "Phi'(0)^5";
  EstimateRow s1{"sle_single", sle_est.primary,
                 slit.restriction_probability(5.0 / 8.0), true};
  EstimateRow e1{"excursion_single", brownian::excursion_avoidance(ex),
                 slit.dprime_at_zero(), true};
  r.estimates = {a, b, z, s1, e1};
  r.notes.push_back("joint avoidance estimated by the k-subset U-statistic "
                    "of single-curve outcomes");
  return r;
}

}  // namespace sawlab::harness
