// sawlab: command line front end to the sawlab core library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sawlab/brownian.hpp"
#include "sawlab/conformal.hpp"
#include "sawlab/harness.hpp"
#include "sawlab/lattice.hpp"
#include "sawlab/mcsaw.hpp"
#include "sawlab/sle.hpp"

using json = nlohmann::ordered_json;
using namespace sawlab;

namespace {

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json curve_json(const PlanarCurve& c) {
  json a = json::array();
  for (const auto& z : c.points) a.push_back(cjson(z));
  return a;
}

json estimate_json(const EstimateWithError& e) {
  json j{{"value", e.value}, {"std_error", e.std_error},
         {"n_samples", e.n_samples}, {"window", e.window}};
  if (e.flagged) j["flagged"] = true;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

std::vector<double> split_numbers(const std::string& text, std::size_t want,
                                  const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InvalidArgument(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (want && v.size() != want)
    throw InvalidArgument(std::string(what) + ": expected " +
                          std::to_string(want) + " comma-separated numbers");
  return v;
}

double fraction(const std::string& text) {
  return boost::rational_cast<double>(mcsaw::parse_rational(text));
}

sle::GridKind grid_kind(const std::string& s) {
  if (s == "uniform") return sle::GridKind::uniform;
  if (s == "quadratic") return sle::GridKind::quadratic;
  if (s == "geometric") return sle::GridKind::geometric;
  throw InvalidArgument("grid must be uniform, quadratic or geometric");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sawlab: self-avoiding walks, SLE and Brownian frontiers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", harness::version());

  // enumerate
  int en_n = 10;
  bool en_half = false, en_bridges = false, en_saps = false;
  auto* en = app.add_subcommand("enumerate", "exact counts as JSON lines");
  en->add_option("--n", en_n, "largest length")->required();
  en->add_flag("--half", en_half, "half-space walks upsilon_n");
  en->add_flag("--bridges", en_bridges, "irreducible bridges lambda_n");
  en->add_flag("--saps", en_saps, "self-avoiding polygons (even n)");

  // kesten
  int ke_K = 14;
  std::optional<double> ke_beta;
  auto* ke = app.add_subcommand("kesten", "Kesten root of the bridge series");
  ke->add_option("--K", ke_K)->required();
  ke->add_option("--beta", ke_beta, "also evaluate the partial sum at beta");

  // sample-saw
  int ss_steps = 100, ss_K = 12;
  std::uint64_t ss_seed = 1;
  std::size_t ss_count = 1;
  auto* ss = app.add_subcommand("sample-saw",
                                "half-space walks by bridge concatenation");
  ss->add_option("--steps", ss_steps)->required();
  ss->add_option("--K", ss_K, "longest enumerated bridge");
  ss->add_option("--seed", ss_seed);
  ss->add_option("--count", ss_count);

  // estimate
  std::string es_exp = "nu", es_lengths = "100,200,400,800";
  std::size_t es_samples = 20000;
  std::uint64_t es_seed = 1;
  auto* es = app.add_subcommand("estimate", "pivot estimate of nu or rho");
  es->add_option("--exponent", es_exp)->check(CLI::IsMember({"nu", "rho"}));
  es->add_option("--lengths", es_lengths);
  es->add_option("--samples", es_samples);
  es->add_option("--seed", es_seed);

  // exponents
  std::string ex_nu = "3/4", ex_gamma = "43/32", ex_rho = "25/64";
  auto* ex = app.add_subcommand("exponents", "restriction exponents, exactly");
  ex->add_option("--nu", ex_nu);
  ex->add_option("--gamma", ex_gamma);
  ex->add_option("--rho", ex_rho);

  // map
  std::string mp_slit, mp_radial, mp_eval;
  bool mp_s0 = false, mp_factors = false;
  auto* mp = app.add_subcommand("map", "slit and radial restriction maps");
  mp->add_option("--slit", mp_slit, "x0,h");
  mp->add_option("--radial", mp_radial, "theta,delta");
  mp->add_option("--eval", mp_eval, "re,im");
  mp->add_flag("--schwarzian0", mp_s0);
  mp->add_flag("--factors", mp_factors);

  // sle-trace
  std::string st_mode = "chordal", st_kappa = "8/3", st_grid = "uniform";
  double st_T = 1.0, st_K = 4.0;
  int st_N = 1000;
  std::size_t st_count = 1;
  std::uint64_t st_seed = 1;
  auto* st = app.add_subcommand("sle-trace", "SLE traces as JSON lines");
  st->add_option("--mode", st_mode)
      ->check(CLI::IsMember({"chordal", "radial", "fullplane"}));
  st->add_option("--kappa", st_kappa);
  st->add_option("--T", st_T);
  st->add_option("--N", st_N);
  st->add_option("--K", st_K, "full-plane start time -K");
  st->add_option("--grid", st_grid);
  st->add_option("--count", st_count);
  st->add_option("--seed", st_seed);

  // restriction-test
  std::string rt_slit = "-1,1";
  sle::ChordalEnsembleConfig rt;
  rt.t_min = 1e-3;
  rt.N = 2400;
  auto* rtc = app.add_subcommand("restriction-test",
                                 "SLE_{8/3} avoidance of a vertical slit");
  rtc->add_option("--slit", rt_slit, "x0,h");
  rtc->add_option("--count", rt.count);
  rtc->add_option("--T", rt.T);
  rtc->add_option("--N", rt.N);
  rtc->add_option("--seed", rt.seed);

  // excursion
  std::size_t xc_count = 1;
  std::uint64_t xc_seed = 1;
  double xc_T = 1.0;
  int xc_N = 1000;
  std::string xc_slit;
  auto* xc = app.add_subcommand(
      "excursion", "excursion paths, or avoidance of --slit");
  xc->add_option("--count", xc_count);
  xc->add_option("--seed", xc_seed);
  xc->add_option("--T", xc_T);
  xc->add_option("--N", xc_N);
  xc->add_option("--slit", xc_slit, "x0,h");

  // loop
  double lp_dur = 1.0;
  std::size_t lp_count = 1;
  int lp_N = 1000;
  std::uint64_t lp_seed = 1;
  bool lp_hull = false;
  auto* lp = app.add_subcommand("loop", "rooted Brownian loops");
  lp->add_option("--duration", lp_dur);
  lp->add_option("--count", lp_count);
  lp->add_option("--N", lp_N);
  lp->add_option("--seed", lp_seed);
  lp->add_flag("--hull", lp_hull, "emit the filled hull as RLE rows");

  // frontier-dim
  std::string fd_src = "loop";
  int fd_scales = 9, fd_kmin = 2, fd_N = 1000000;
  double fd_grid = 4096;
  std::uint64_t fd_seed = 1;
  auto* fd = app.add_subcommand("frontier-dim", "box-counting dimension");
  fd->add_option("--source", fd_src)
      ->check(CLI::IsMember({"loop", "sle", "segment"}));
  fd->add_option("--scales", fd_scales, "finest scale diam/2^k");
  fd->add_option("--k-min", fd_kmin, "coarsest scale diam/2^k");
  fd->add_option("--N", fd_N);
  fd->add_option("--grid", fd_grid, "loop hull cells per diameter");
  fd->add_option("--seed", fd_seed);

  // nondisconnect
  double nd_eps = 0.1;
  std::size_t nd_target = 1, nd_max = 1000000;
  std::uint64_t nd_seed = 1;
  brownian::NonDisconnectionConfig nd;
  auto* ndc = app.add_subcommand("nondisconnect",
                                 "non-disconnecting Brownian pairs");
  ndc->add_option("--eps", nd_eps);
  ndc->add_option("--target-accepts", nd_target);
  ndc->add_option("--max-trials", nd_max);
  ndc->add_option("--cell", nd.cell);
  ndc->add_option("--seed", nd_seed);

  // run
  std::string rn_id, rn_config, rn_out;
  std::optional<std::uint64_t> rn_seed;
  auto* rn = app.add_subcommand("run", "registered experiment");
  rn->add_option("--experiment", rn_id);
  rn->add_option("--config", rn_config, "JSON configuration file");
  rn->add_option("--seed", rn_seed);
  rn->add_option("--out", rn_out, "output directory");

  auto* ls = app.add_subcommand("list", "experiment catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*en) {
      const auto c = lattice::saw_counts(en_n);
      for (int n = 1; n <= en_n; ++n) {
        json j{{"n", n}, {"count", c[n]}};
        if (en_half) j["half_space"] = lattice::count_half_space(n);
        if (en_bridges) {
          j["irreducible_bridges"] = lattice::count_irreducible_bridges(n);
          j["irreducible_bridges_literal"] = lattice::count_irreducible_bridges(
              n, 2, lattice::BridgeConvention::first_step_strict);
        }
        if (en_saps && n % 2 == 0) {
          const auto s = lattice::count_saps(n);
          j["saps_rooted"] = s.rooted;
          j["saps"] = s.classes;
        }
        emit(j);
      }
    } else if (*ke) {
      const auto t = lattice::BridgeTable::build(ke_K);
      json j{{"K", ke_K}, {"beta_hat", lattice::kesten_beta(t, ke_K)}};
      if (ke_beta)
        j["partial_sum"] = lattice::kesten_partial_sum(t, ke_K, *ke_beta);
      emit(j);
    } else if (*ss) {
      const auto t = lattice::BridgeTable::build(ss_K);
      const lattice::HalfSpaceSampler sampler(t);
      auto rng = make_rng(ss_seed);
      for (std::size_t i = 0; i < ss_count; ++i) {
        const auto w = lattice::sample_half_space_saw(ss_steps, sampler, rng);
        json a = json::array();
        for (std::size_t k = 0; k < w.num_points(); ++k)
          a.push_back(json::array({w.coord(k, 0), w.coord(k, 1)}));
        emit(a);
      }
    } else if (*es) {
      mcsaw::SamplingConfig c;
      c.lengths.clear();
      for (double v : split_numbers(es_lengths, 0, "--lengths"))
        c.lengths.push_back(int(v));
      c.samples = es_samples;
      c.seed = es_seed;
      const auto e = es_exp == "nu" ? mcsaw::estimate_nu(c) : mcsaw::estimate_rho(c);
      emit({{"exponent", e.exponent},
            {"value", e.estimate.value},
            {"std_error", e.estimate.std_error},
            {"window", e.estimate.window}});
    } else if (*ex) {
      const auto s = mcsaw::exponent_algebra(mcsaw::parse_rational(ex_nu),
                                             mcsaw::parse_rational(ex_gamma),
                                             mcsaw::parse_rational(ex_rho));
      emit({{"a", mcsaw::to_string(s.a)},
            {"b", mcsaw::to_string(s.b)},
            {"a_prime", mcsaw::to_string(s.a_prime)},
            {"b_prime", mcsaw::to_string(s.b_prime)},
            {"alpha", mcsaw::to_string(s.alpha)}});
    } else if (*mp) {
      if (mp_slit.empty() == mp_radial.empty())
        throw InvalidArgument("map: give exactly one of --slit or --radial");
      json j;
      if (!mp_slit.empty()) {
        const auto p = split_numbers(mp_slit, 2, "--slit");
        const auto m = conformal::SlitMap::vertical_slit(p[0], p[1]);
        j["dprime0"] = m.dprime_at_zero();
        if (!mp_eval.empty()) {
          const auto z = split_numbers(mp_eval, 2, "--eval");
          j["value"] = cjson(m(Complex(z[0], z[1])));
        }
        if (mp_s0) {
          j["schwarzian0"] = cjson(m.schwarzian(0.0));
          j["bubble_measure"] = m.bubble_measure();
        }
      } else {
        const auto p = split_numbers(mp_radial, 2, "--radial");
        const conformal::RadialRestrictionMap m(p[0], p[1]);
        if (!mp_eval.empty()) {
          const auto z = split_numbers(mp_eval, 2, "--eval");
          j["value"] = cjson(m(Complex(z[0], z[1])));
        }
        if (mp_factors || mp_eval.empty()) {
          const auto f = conformal::radial_restriction_factors(m);
          j["dprime_at_one"] = f.at_one;
          j["dprime_at_zero"] = f.at_zero;
          j["probability"] = f.probability;
        }
      }
      emit(j);
    } else if (*st) {
      const double kappa = fraction(st_kappa);
      const auto kind = grid_kind(st_grid);
      for (std::size_t i = 0; i < st_count; ++i) {
        auto rng = make_rng(st_seed, i);
        PlanarCurve c;
        if (st_mode == "chordal")
          c = sle::chordal_trace(kappa, st_T, st_N, rng, kind);
        else if (st_mode == "radial")
          c = sle::radial_trace(kappa, st_T, st_N, rng, kind);
        else
          c = sle::full_plane_trace(kappa, st_K, st_T, st_N, rng);
        emit(curve_json(c));
      }
    } else if (*rtc) {
      const auto p = split_numbers(rt_slit, 2, "--slit");
      const auto e = sle::chordal_restriction_test(
          rt, conformal::SlitMap::vertical_slit(p[0], p[1]));
      json j{{"p_hat", e.primary.value},
             {"se", e.primary.std_error},
             {"prediction", e.prediction},
             {"p_hat_tube", e.corrected.value}};
      if (!e.primary.note.empty()) j["note"] = e.primary.note;
      emit(j);
    } else if (*xc) {
      if (!xc_slit.empty()) {
        const auto p = split_numbers(xc_slit, 2, "--slit");
        const auto m = conformal::SlitMap::vertical_slit(p[0], p[1]);
        const auto t = brownian::excursion_tally(m, xc_count, xc_seed);
        emit({{"p_hat", double(t.avoided) / double(t.runs)},
              {"se", brownian::excursion_avoidance(t).std_error},
              {"prediction", m.dprime_at_zero()},
              {"unresolved", t.unresolved}});
      } else {
        for (std::size_t i = 0; i < xc_count; ++i) {
          auto rng = make_rng(xc_seed, i);
          emit(curve_json(brownian::excursion(xc_T, xc_N, rng)));
        }
      }
    } else if (*lp) {
      for (std::size_t i = 0; i < lp_count; ++i) {
        auto rng = make_rng(lp_seed, i);
        std::vector<PlanarCurve> c{brownian::rooted_loop(lp_dur, lp_N, rng)};
        if (lp_hull) {
          const auto g = brownian::hull_fill(c, brownian::default_resolution(c));
          emit({{"resolution", g.resolution()},
                {"x0", g.x0()},
                {"y0", g.y0()},
                {"width", g.width()},
                {"height", g.height()},
                {"rows", g.to_rle()}});
        } else {
          emit(curve_json(c[0]));
        }
      }
    } else if (*fd) {
      auto rng = make_rng(fd_seed);
      PlanarCurve c;
      if (fd_src == "segment") {
        c.points = {Complex(0, 0), Complex(0.6, 0.8)};
      } else if (fd_src == "sle") {
        c = sle::chordal_trace(8.0 / 3.0, 1.0, fd_N, rng);
      } else {
        std::vector<PlanarCurve> loop{brownian::rooted_loop(1.0, fd_N, rng)};
        const auto g = brownian::hull_fill(loop, loop[0].diameter() / fd_grid);
        c = brownian::frontier(g).curve;
      }
      const auto scales =
          brownian::dyadic_scales(c.diameter(), fd_kmin, fd_scales);
      emit(estimate_json(brownian::box_dimension(c, scales)));
    } else if (*ndc) {
      auto rng = make_rng(nd_seed);
      std::size_t trials = 0, accepted = 0;
      while (accepted < nd_target && trials < nd_max) {
        const auto p = brownian::non_disconnecting_pair(nd_eps, nd_max - trials,
                                                        rng, nd);
        trials += p.estimate.trials;
        if (!p.estimate.accepted) break;
        ++accepted;
        emit({{"eps", nd_eps},
              {"first", curve_json(p.pair.first)},
              {"second", curve_json(p.pair.second)}});
      }
      const auto e = stats::proportion(accepted, trials);
      std::cerr << json{{"trials", trials},
                        {"accepted", accepted},
                        {"acceptance_rate", e.value},
                        {"se", e.std_error}}
                       .dump()
                << '\n';
    } else if (*rn) {
      harness::ExperimentConfig cfg;
      if (!rn_config.empty()) {
        std::ifstream in(rn_config);
        if (!in) throw InvalidArgument("cannot read " + rn_config);
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = harness::parse_config(buf.str());
      }
      if (!rn_id.empty()) cfg.id = rn_id;
      if (rn_seed) cfg.seed = *rn_seed;
      if (!rn_out.empty()) cfg.out = rn_out;
      const auto report = harness::run_experiment(cfg);
      if (!cfg.out.empty()) harness::write_report(report, cfg.out);
      std::cout << harness::report_json(report);
    } else if (*ls) {
      for (const auto& e : harness::experiment_catalog()) {
        json d = json::object();
        for (const auto& [k, v] : e.defaults) d[k] = v;
        emit({{"id", e.id},
              {"title", e.title},
              {"criterion", e.criterion},
              {"defaults", d}});
      }
    }
  } catch (const harness::ConfigError& e) {
    std::cerr << json{{"error", "config"}, {"field", e.field()}, {"message", e.what()}}
                     .dump()
              << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sawlab: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
