#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <unordered_set>

#include "sawlab/brownian.hpp"
#include "sawlab/conformal.hpp"
#include "sawlab/harness.hpp"
#include "sawlab/lattice.hpp"
#include "sawlab/mcsaw.hpp"
#include "sawlab/parallel.hpp"
#include "sawlab/sle.hpp"

namespace sawlab::harness {
namespace {

using Params = std::map<std::string, double>;
using mcsaw::Coord;

class Args {
 public:
  explicit Args(const Params& p) : p_(p) {}

  double real(const std::string& name) const { return p_.at(name); }

  double positive(const std::string& name) const {
    const double v = real(name);
    if (!(v > 0.0)) throw ConfigError("params." + name, "must be positive");
    return v;
  }

  std::size_t count(const std::string& name, double lo = 1.0) const {
    const double v = real(name);
    if (!(v >= lo) || v != std::floor(v) || v > 1e15)
      throw ConfigError("params." + name,
                        "must be an integer >= " + std::to_string(int(lo)));
    return static_cast<std::size_t>(v);
  }

  int integer(const std::string& name, int lo, int hi) const {
    const double v = real(name);
    if (!(v >= lo && v <= hi) || v != std::floor(v))
      throw ConfigError("params." + name, "must be an integer in [" +
                                              std::to_string(lo) + ", " +
                                              std::to_string(hi) + "]");
    return int(v);
  }

 private:
  const Params& p_;
};

EstimateRow exact_row(std::string name, double value, double prediction) {
  EstimateRow r;
  r.name = std::move(name);
  r.estimate.value = value;
  r.estimate.n_samples = 1;
  r.prediction = prediction;
  r.has_prediction = true;
  return r;
}

EstimateRow mc_row(std::string name, EstimateWithError e, double prediction) {
  EstimateRow r{std::move(name), std::move(e), prediction, true};
  return r;
}

// ---------------------------------------------------------------- lattice

ComparisonReport exact_counts(const Args& a, ComparisonReport r) {
  const int n_max = a.integer("n_max", 1, 24);
  lattice::EnumerationLimits lim;
  lim.saw_cap = std::max(lim.saw_cap, n_max);
  const auto c = lattice::saw_counts(n_max, 2, lim);
  Table t{"counts", {"n", "C_n"}, {}};
  for (int n = 0; n <= n_max; ++n) t.rows.push_back({double(n), double(c[n])});
  std::size_t violations = 0, pairs = 0;
  for (int m = 1; m <= n_max; ++m)
    for (int n = 1; m + n <= n_max; ++n) {
      ++pairs;
      violations += c[m + n] > c[m] * c[n];
    }
  r.tables.push_back(std::move(t));
  r.estimates.push_back(exact_row("C_1", double(c[1]), 4.0));
  r.estimates.push_back(
      exact_row("submultiplicativity_violations", double(violations), 0.0));
  r.notes.push_back(std::to_string(pairs) + " pairs (m, n) with m + n <= " +
                    std::to_string(n_max) + " checked");
  return r;
}

ComparisonReport connective_constant(const Args& a, ComparisonReport r) {
  const int n_max = a.integer("n_max", 4, 24);
  lattice::EnumerationLimits lim;
  lim.saw_cap = std::max(lim.saw_cap, n_max);
  const auto c = lattice::saw_counts(n_max, 2, lim);
  Table t{"ratios", {"n", "sqrt(C_{n+2}/C_n)", "C_{n+1}/C_n"}, {}};
  for (int n = 1; n + 2 <= n_max; ++n) {
    const double two = std::sqrt(double(c[n + 2]) / double(c[n]));
    t.rows.push_back({double(n), two, double(c[n + 1]) / double(c[n])});
  }
  for (int n = std::max(1, n_max - 4); n + 2 <= n_max; ++n)
    r.estimates.push_back(exact_row("ratio_n" + std::to_string(n),
                                    std::sqrt(double(c[n + 2]) / double(c[n])),
                                    2.638));
  r.tables.push_back(std::move(t));
  return r;
}

ComparisonReport kesten(const Args& a, ComparisonReport r) {
  const int K = a.integer("K", 2, 20);
  lattice::EnumerationLimits lim;
  lim.saw_cap = std::max(lim.saw_cap, K);
  lim.half_space_cap = std::max(lim.half_space_cap, K);
  const auto table = lattice::BridgeTable::build(K, 2, lim);
  Table t{"kesten", {"K", "lambda_K", "beta_K"}, {}};
  double prev = 0.0, worst = 0.0;
  std::size_t non_increasing = 0;
  for (int k = 2; k <= K; ++k) {
    const double b = lattice::kesten_beta(table, k);
    t.rows.push_back({double(k), double(table.irreducible_count(k)), b});
    if (k > 2 && !(b > prev)) ++non_increasing;
    worst = std::max(worst, b);
    prev = b;
  }
  r.tables.push_back(std::move(t));

  const auto census = lattice::half_space_census(K, 2, lim);
  std::size_t mismatches = 0, checked = 0;
  Table id{"first_renewal", {"n", "k", "count", "lambda_k*upsilon_{n-k}"}, {}};
  for (int n = 2; n <= K; ++n)
    for (int k = 1; k < n; ++k) {
      const std::uint64_t lhs = census.first_renewal[n][k];
      const std::uint64_t rhs = census.irreducible[k] * census.half_counts[n - k];
      ++checked;
      mismatches += lhs != rhs;
      id.rows.push_back({double(n), double(k), double(lhs), double(rhs)});
    }
  r.tables.push_back(std::move(id));
  r.estimates.push_back(exact_row("beta_K", prev, 2.638));
  r.estimates.push_back(exact_row("max_beta", worst, 2.638));
  r.estimates.push_back(
      exact_row("monotonicity_violations", double(non_increasing), 0.0));
  r.estimates.push_back(
      exact_row("renewal_identity_mismatches", double(mismatches), 0.0));
  r.notes.push_back(std::to_string(checked) + " pairs k < n <= " +
                    std::to_string(K) + " checked");
  return r;
}

mcsaw::Rational exact_from_double(const std::string& name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  try {
    return mcsaw::parse_rational(buf);
  } catch (const InvalidArgument& e) {
    throw ConfigError("params." + name, e.what());
  }
}

ComparisonReport exponent_algebra(const Args& a, ComparisonReport r) {
  const auto nu = exact_from_double("nu", a.real("nu"));
  const auto gamma = exact_from_double("gamma", a.real("gamma"));
  const auto rho = exact_from_double("rho", a.real("rho"));
  const auto s = mcsaw::exponent_algebra(nu, gamma, rho);
  const std::pair<const char*, const mcsaw::Rational*> out[] = {
      {"a", &s.a}, {"b", &s.b}, {"a_prime", &s.a_prime},
      {"b_prime", &s.b_prime}, {"alpha", &s.alpha}};
  const mcsaw::Rational expect[] = {{5, 8}, {5, 48}, {2, 1}, {2, 3}, {1, 2}};
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& v = *out[i].second;
    r.estimates.push_back(exact_row(out[i].first, boost::rational_cast<double>(v),
                                    boost::rational_cast<double>(expect[i])));
    r.notes.push_back(std::string(out[i].first) + " = " + mcsaw::to_string(v));
    mismatches += v != expect[i];
  }
  r.estimates.push_back(exact_row("exact_mismatches", double(mismatches), 0.0));
  return r;
}

ComparisonReport nu_pivot(const Args& a, ComparisonReport r) {
  mcsaw::SamplingConfig c;
  c.samples = a.count("samples", 64);
  c.thin = a.count("thin");
  c.seed = r.seed;
  const auto est = mcsaw::estimate_nu(c);
  r.estimates.push_back(mc_row("nu", est.estimate, 0.75));
  r.estimates.push_back(mc_row("nu_diameter", est.diameter_variant, 0.75));
  Table t{"r2", {"n", "mean_R2", "se", "acceptance"}, {}};
  for (const auto& p : est.per_length)
    t.rows.push_back({double(p.n), p.value.value, p.value.std_error, p.acceptance});
  r.tables.push_back(std::move(t));
  Table w{"window_sensitivity", {"dropped_end", "nu"}, {}};
  for (std::size_t i = 0; i < est.window_sensitivity.size(); ++i)
    w.rows.push_back({double(i), est.window_sensitivity[i]});
  r.tables.push_back(std::move(w));

  const auto u = mcsaw::pivot_uniformity(
      a.integer("uniformity_n", 2, 8), a.count("uniformity_proposals", 1000),
      a.count("uniformity_thin"), splitmix64(r.seed));
  r.tests.push_back({"pivot_uniformity", u.test.statistic, u.test.p_value,
                     u.samples, u.walks});
  return r;
}

// Two independent pivot chains of length n from the origin; they fail to
// intersect with probability C_{2n} / C_n^2 ~ n^{1 - gamma}.
ComparisonReport pair_nonintersection(const Args& a, ComparisonReport r) {
  const int n0 = a.integer("n_min", 8, 4000);
  const int levels = a.integer("levels", 2, 8);
  const std::size_t samples = a.count("samples", 16);
  const std::size_t thin = a.count("thin");
  std::vector<double> x, y, se;
  Table t{"pair_nonintersection", {"n", "P", "se"}, {}};
  for (int l = 0; l < levels; ++l) {
    const int n = n0 << l;
    auto rng = make_rng(r.seed, 7000 + l);
    mcsaw::PivotChain c1(n, 2), c2(n, 2);
    c1.thermalize(10 * std::uint64_t(n), rng);
    c2.thermalize(10 * std::uint64_t(n), rng);
    std::vector<double> hits;
    hits.reserve(samples);
    std::unordered_set<std::uint64_t> occ;
    auto key = [](Coord x, Coord y) {
      return (std::uint64_t(std::uint32_t(x)) << 32) | std::uint32_t(y);
    };
    for (std::size_t s = 0; s < samples; ++s) {
      for (std::size_t k = 0; k < thin; ++k) {
        c1.step(rng);
        c2.step(rng);
      }
      occ.clear();
      const auto& p = c1.coords();
      for (int k = 1; k <= n; ++k) occ.insert(key(p[2 * k], p[2 * k + 1]));
      const auto& q = c2.coords();
      bool apart = true;
      for (int k = 1; k <= n && apart; ++k)
        apart = !occ.count(key(q[2 * k], q[2 * k + 1]));
      hits.push_back(apart);
    }
    const auto e = stats::batch_mean(hits);
    t.rows.push_back({double(n), e.value, e.std_error});
    if (e.value > 0.0) {
      x.push_back(std::log(double(n)));
      y.push_back(std::log(e.value));
      se.push_back(std::max(e.std_error, 1e-12) / e.value);
    }
  }
  r.tables.push_back(std::move(t));
  if (x.size() < 2) {
    r.flagged = true;
    r.notes.push_back("fewer than two lengths with a nonzero estimate");
    return r;
  }
  const auto fit = stats::fit_line(x, y, se);
  EstimateWithError g;
  g.value = 1.0 - fit.slope;
  g.std_error = fit.slope_se;
  g.n_samples = samples * levels;
  g.window = "n=" + std::to_string(n0) + ".." + std::to_string(n0 << (levels - 1));
  r.estimates.push_back(mc_row("gamma", g, 43.0 / 32.0));
  r.notes.push_back("experimental: not part of the acceptance set");
  return r;
}

// ---------------------------------------------------------------- continuum

conformal::SlitMap slit_from(const Args& a) {
  const double h = a.positive("h");
  return conformal::SlitMap::vertical_slit(a.real("x0"), h);
}

ComparisonReport chordal_restriction(const Args& a, ComparisonReport r) {
  const auto slit = slit_from(a);
  sle::ChordalEnsembleConfig c;
  c.kappa = a.positive("kappa");
  c.T = a.positive("T");
  c.N = a.integer("N", 4, 1000000);
  c.t_min = a.positive("t_min");
  c.count = a.count("count");
  c.seed = r.seed;
  const auto e = sle::chordal_restriction_test(c, slit);
  r.estimates.push_back(mc_row("avoidance", e.primary, e.prediction));
  r.estimates.push_back(mc_row("avoidance_tube", e.corrected, e.prediction));
  r.flagged |= e.primary.flagged;
  if (!e.primary.note.empty()) r.notes.push_back(e.primary.note);
  r.notes.push_back("geometric time grid; avoidance counted on the polyline, "
                    "tube criterion reported alongside");
  return r;
}

ComparisonReport excursion_cr1(const Args& a, ComparisonReport r) {
  const auto slit = slit_from(a);
  brownian::ExcursionRunConfig c;
  c.step_fraction = a.positive("step_fraction");
  c.min_step = a.positive("min_step");
  c.escape_radius = a.positive("escape_radius");
  const auto t = brownian::excursion_tally(slit, a.count("count"), r.seed, c);
  r.estimates.push_back(
      mc_row("avoidance", brownian::excursion_avoidance(t), slit.dprime_at_zero()));
  r.estimates.push_back(exact_row("unresolved", double(t.unresolved), 0.0));
  return r;
}

ComparisonReport radial_restriction(const Args& a, ComparisonReport r) {
  const conformal::RadialRestrictionMap m(a.real("theta"), a.positive("delta"));
  sle::RadialEnsembleConfig c;
  c.T = a.positive("T");
  c.N = a.integer("N", 4, 1000000);
  c.t_min = a.positive("t_min");
  c.count = a.count("count");
  c.seed = r.seed;
  const auto e = sle::radial_restriction_test(c, m);
  const auto f = conformal::radial_restriction_factors(m);
  r.estimates.push_back(mc_row("avoidance", e.primary, f.probability));
  r.estimates.push_back(mc_row("avoidance_tube", e.corrected, f.probability));
  r.estimates.push_back(exact_row("dprime_at_one", f.at_one, f.at_one));
  r.estimates.push_back(exact_row("dprime_at_zero", f.at_zero, f.at_zero));
  r.flagged |= e.primary.flagged;
  if (!e.primary.note.empty()) r.notes.push_back(e.primary.note);

  // Zero driving function: the chordal trace is 2i sqrt(t).
  sle::DrivingPath zero;
  zero.kappa = 0.0;
  zero.times = sle::make_time_grid(sle::GridKind::uniform, 1.0,
                                   a.integer("kappa0_N", 4, 100000));
  zero.values.assign(zero.times.size(), 0.0);
  const auto tr = sle::chordal_trace(zero);
  double err = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k)
    err = std::max(err, std::abs(tr.points[k] -
                                 Complex(0.0, 2.0 * std::sqrt(tr.times[k]))));
  r.estimates.push_back(exact_row("kappa0_max_error", err, 0.0));
  return r;
}

ComparisonReport eight_five(const Args& a, ComparisonReport r) {
  EightFiveConfig c;
  c.x0 = a.real("x0");
  c.h = a.positive("h");
  c.sle_count = a.count("sle_count");
  c.sle_T = a.positive("sle_T");
  c.sle_N = a.integer("sle_N", 4, 1000000);
  c.sle_t_min = a.positive("sle_t_min");
  c.excursion_count = a.count("excursion_count");
  c.seed = r.seed;
  auto out = eight_vs_five(c);
  out.params = r.params;
  out.config_hash = r.config_hash;
  return out;
}

PlanarCurve unit_diameter(PlanarCurve c) {
  const double d = c.diameter();
  if (!(d > 0.0)) throw NumericError("curve has zero diameter");
  const Complex z0 = c.points.front();
  for (auto& z : c.points) z = (z - z0) / d;
  return c;
}

ComparisonReport dimension(const Args& a, ComparisonReport r) {
  const int k_min = a.integer("k_min", 0, 20);
  const int k_max = a.integer("k_max", k_min + 3, 24);
  const auto scales = brownian::dyadic_scales(1.0, k_min, k_max);
  const std::string window =
      "diam/2^" + std::to_string(k_min) + "..diam/2^" + std::to_string(k_max);

  const std::size_t n_sle = a.count("sle_traces");
  std::vector<PlanarCurve> sle_curves(n_sle);
  const int sle_N = a.integer("sle_N", 100, 10000000);
  const double sle_T = a.positive("sle_T");
  parallel_for(n_sle, [&](std::size_t i) {
    auto rng = make_rng(r.seed, 100 + i);
    sle_curves[i] = unit_diameter(sle::chordal_trace(
        8.0 / 3.0, sle_T, sle_N, rng, sle::GridKind::uniform));
  });
  auto sle_dim = brownian::box_dimension(sle_curves, scales);
  sle_dim.window = window;
  r.estimates.push_back(mc_row("sle", sle_dim, 4.0 / 3.0));
  sle_curves.clear();

  const std::size_t n_loops = a.count("loops");
  const int loop_N = a.integer("loop_N", 100, 100000000);
  const double grid = a.positive("loop_grid");
  std::vector<PlanarCurve> fronts(n_loops);
  std::vector<std::string> notes(n_loops);
  for (std::size_t i = 0; i < n_loops; ++i) {
    auto rng = make_rng(r.seed, 200 + i);
    std::vector<PlanarCurve> loop{brownian::rooted_loop(1.0, loop_N, rng)};
    const double res = loop[0].diameter() / grid;
    const auto region = brownian::hull_fill(loop, res);
    loop.clear();
    auto f = brownian::frontier(region);
    if (f.flagged) notes[i] = f.note;
    fronts[i] = unit_diameter(std::move(f.curve));
  }
  auto loop_dim = brownian::box_dimension(fronts, scales);
  loop_dim.window = window;
  for (const auto& n : notes)
    if (!n.empty()) {
      loop_dim.flagged = true;
      r.notes.push_back("frontier: " + n);
    }
  r.estimates.push_back(mc_row("loop_frontier", loop_dim, 4.0 / 3.0));

  PlanarCurve seg;
  seg.points = {Complex(0.0, 0.0), Complex(0.6, 0.8)};
  const auto seg_scales = brownian::dyadic_scales(
      1.0, a.integer("segment_k_min", 0, 20), a.integer("segment_k_max", 4, 24));
  r.estimates.push_back(
      mc_row("segment", brownian::box_dimension(seg, seg_scales), 1.0));

  const double sres = 1.0 / 256.0;
  brownian::GridRegion square(sres, 0.0, 0.0, 256, 256);
  for (int j = 0; j < 256; ++j)
    for (int i = 0; i < 256; ++i) square.set(i, j);
  r.estimates.push_back(mc_row(
      "square_region",
      brownian::box_dimension(square, brownian::dyadic_scales(1.0, 1, 8)), 2.0));
  return r;
}

ComparisonReport non_disconnection(const Args& a, ComparisonReport r) {
  brownian::NonDisconnectionConfig c;
  c.cell = a.positive("cell");
  c.max_depth = a.positive("max_depth");
  c.step_ratio = a.positive("step_ratio");
  const std::size_t trials = a.count("trials");
  const double eps[3] = {a.positive("eps1"), a.positive("eps2"),
                         a.positive("eps3")};
  std::vector<double> x, y, se;
  Table t{"non_disconnection", {"eps", "P", "se", "trials", "depth_cuts"}, {}};
  for (int i = 0; i < 3; ++i) {
    const auto e = brownian::non_disconnection_probability(
        eps[i], trials, splitmix64(r.seed + i), c);
    t.rows.push_back({eps[i], e.probability.value, e.probability.std_error,
                      double(e.trials), double(e.depth_cuts)});
    r.estimates.push_back(
        mc_row("P_eps=" + std::to_string(eps[i]).substr(0, 5), e.probability,
               std::pow(eps[i], 4.0 / 3.0)));
    r.estimates.back().has_prediction = false;
    if (e.accepted > 0) {
      x.push_back(std::log(eps[i]));
      y.push_back(std::log(e.probability.value));
      se.push_back(e.probability.std_error / e.probability.value);
    }
  }
  r.tables.push_back(std::move(t));
  EstimateWithError slope;
  slope.n_samples = 3 * trials;
  slope.window = "eps in {" + std::to_string(eps[0]) + ", " +
                 std::to_string(eps[1]) + ", " + std::to_string(eps[2]) + "}";
  if (x.size() < 2) {
    slope.value = std::numeric_limits<double>::quiet_NaN();
    slope.flagged = true;
    slope.note = "fewer than two nonzero probabilities";
  } else {
    const auto fit = stats::fit_line(x, y, se);
    slope.value = fit.slope;
    slope.std_error = fit.slope_se;
  }
  r.estimates.push_back(mc_row("slope", slope, 4.0 / 3.0));
  EstimateWithError eta = slope;
  eta.value /= 2.0;
  eta.std_error /= 2.0;
  r.estimates.push_back(mc_row("eta", eta, 2.0 / 3.0));
  r.notes.push_back("simulated on the cylinder log z; dips deeper than "
                    "max_depth below log eps count as disconnecting");
  return r;
}

ComparisonReport saw_sle(const Args& a, ComparisonReport r) {
  SawSleConfig c;
  c.saw_length = a.integer("saw_length", 10, 100000);
  c.saw_radius = a.positive("saw_radius");
  c.saw_samples = a.count("saw_samples", 2);
  c.saw_thin = a.count("saw_thin");
  c.sle_samples = a.count("sle_samples", 2);
  c.sle_T = a.positive("sle_T");
  c.sle_N = a.integer("sle_N", 4, 1000000);
  c.kappas = {8.0 / 3.0, a.positive("kappa_alt")};
  c.keep_raw = a.real("keep_raw") != 0.0;
  c.seed = r.seed;
  auto out = saw_vs_sle_comparison(c);
  out.params = r.params;
  out.config_hash = r.config_hash;
  return out;
}

ComparisonReport schwarzian(const Args& a, ComparisonReport r) {
  const auto slit = slit_from(a);
  const double step = a.real("fd_step");
  const conformal::ComplexMap f = [&](Complex z) { return slit(z); };
  const Complex probes[] = {{0.0, 0.0}, {1.0, 0.0}, {-3.0, 0.0},
                            {0.5, 0.7}, {2.0, 1.5}, {-0.2, 2.5}};
  double worst = 0.0;
  Table t{"schwarzian", {"re_z", "im_z", "closed_re", "closed_im", "fd_re",
                         "fd_im"}, {}};
  for (const Complex z : probes) {
    const Complex s0 = slit.schwarzian(z);
    const Complex s1 = conformal::schwarzian(f, z, step);
    worst = std::max(worst, std::abs(s0 - s1));
    t.rows.push_back({z.real(), z.imag(), s0.real(), s0.imag(), s1.real(),
                      s1.imag()});
  }
  r.tables.push_back(std::move(t));
  r.estimates.push_back(exact_row("max_abs_difference", worst, 0.0));
  const double closed = slit.bubble_measure();
  const double fd = -(5.0 / 48.0) * conformal::schwarzian(f, 0.0, step).real();
  r.estimates.push_back(exact_row("bubble_closed_form", closed, 15.0 / 128.0));
  r.estimates.push_back(exact_row("bubble_finite_difference", fd, 15.0 / 128.0));
  return r;
}

using Runner = ComparisonReport (*)(const Args&, ComparisonReport);

struct Entry {
  ExperimentInfo info;
  Runner run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"exact-counts", "Exact SAW counts and submultiplicativity", 1,
        {{"n_max", 18}}},
       exact_counts},
      {{"connective-constant", "Ratio estimates of the connective constant", 2,
        {{"n_max", 20}}},
       connective_constant},
      {{"kesten", "Irreducible bridges and the Kesten relation", 3, {{"K", 14}}},
       kesten},
      {{"exponent-algebra", "Restriction exponents from (nu, gamma, rho)", 4,
        {{"nu", 0.75}, {"gamma", 1.34375}, {"rho", 0.390625}}},
       exponent_algebra},
      {{"chordal-restriction", "SLE_{8/3} avoidance of a vertical slit", 5,
        {{"kappa", 8.0 / 3.0}, {"x0", -1.0}, {"h", 1.0}, {"T", 16.0},
         {"N", 2400}, {"t_min", 1e-3}, {"count", 10000}}},
       chordal_restriction},
      {{"excursion-cr1", "Brownian excursion avoidance of a vertical slit", 6,
        {{"x0", -1.0}, {"h", 1.0}, {"count", 10000}, {"step_fraction", 0.2},
         {"min_step", 1e-4}, {"escape_radius", 1e3}}},
       excursion_cr1},
      {{"radial-restriction", "Radial SLE_{8/3} avoidance of a boundary bump", 7,
        {{"theta", std::numbers::pi}, {"delta", 0.3}, {"T", 4.0}, {"N", 800},
         {"t_min", 1e-3}, {"count", 10000}, {"kappa0_N", 1000}}},
       radial_restriction},
      {{"eight-vs-five", "Eight SLE_{8/3} versus five excursions", 8,
        {{"x0", -1.0}, {"h", 1.0}, {"sle_count", 10000}, {"sle_T", 16.0},
         {"sle_N", 2400}, {"sle_t_min", 1e-3}, {"excursion_count", 10000}}},
       eight_five},
      {{"dimension", "Box dimension of SLE_{8/3} and Brownian frontiers", 9,
        {{"k_min", 2}, {"k_max", 9}, {"sle_traces", 4}, {"sle_N", 30000},
         {"sle_T", 1.0}, {"loops", 4}, {"loop_N", 4000000},
         {"loop_grid", 4096}, {"segment_k_min", 4}, {"segment_k_max", 11}}},
       dimension},
      {{"non-disconnection", "Non-disconnection exponent of two Brownian paths",
        10,
        {{"eps1", 0.2}, {"eps2", 0.1}, {"eps3", 0.05}, {"trials", 4000},
         {"cell", 0.025}, {"max_depth", 8.0}, {"step_ratio", 0.5}}},
       non_disconnection},
      {{"nu-pivot", "Pivot estimate of nu and chain uniformity", 11,
        {{"samples", 20000}, {"thin", 10}, {"uniformity_n", 6},
         {"uniformity_proposals", 1000000}, {"uniformity_thin", 100}}},
       nu_pivot},
      {{"saw-vs-sle", "Half-plane SAW against chordal SLE functionals", 12,
        {{"saw_length", 10000}, {"saw_radius", 300.5}, {"saw_samples", 10000},
         {"saw_thin", 1000}, {"sle_samples", 10000}, {"sle_T", 4.0},
         {"sle_N", 600}, {"kappa_alt", 6.0}, {"keep_raw", 0}}},
       saw_sle},
      {{"schwarzian", "Slit-map Schwarzian and boundary bubble measure", 13,
        {{"x0", -1.0}, {"h", 1.0}, {"fd_step", 0.0}}},
       schwarzian},
      {{"pair-nonintersection", "gamma from two non-intersecting SAWs", 0,
        {{"n_min", 50}, {"levels", 4}, {"samples", 20000}, {"thin", 20}}},
       pair_nonintersection},
  };
  return entries;
}

const Entry& find_entry(const std::string& id) {
  for (const auto& e : registry())
    if (e.info.id == id) return e;
  throw ConfigError("experiment", "unknown experiment '" + id + "'");
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const ExperimentInfo& find_experiment(const std::string& id) {
  return find_entry(id).info;
}

ComparisonReport run_experiment(const ExperimentConfig& config) {
  const auto& entry = find_entry(config.id);
  ExperimentConfig effective{config.id, config.seed, entry.info.defaults, {}};
  for (const auto& [k, v] : config.params) {
    if (!effective.params.count(k))
      throw ConfigError("params." + k, "unknown parameter for " + config.id);
    if (!std::isfinite(v)) throw ConfigError("params." + k, "must be finite");
    effective.params[k] = v;
  }
  ComparisonReport r;
  r.experiment = config.id;
  r.seed = config.seed;
  r.params = effective.params;
  r.config_hash = config_hash(effective);
  return entry.run(Args(effective.params), std::move(r));
}

}  // namespace sawlab::harness
