// Acceptance runner: `acceptance <criterion>` or `acceptance all`.
// Prints one PASS/FAIL line per criterion; exit status 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sawlab/conformal.hpp"
#include "sawlab/harness.hpp"

using namespace sawlab;
using namespace sawlab::harness;

namespace {

// Tolerances, pinned.
constexpr double kRatioLo = 2.60 - 0.05, kRatioHi = 2.70 + 0.05;
constexpr double kKestenCap = 2.7;
constexpr double kRestrictionSlit = 0.8053;  // quoted 2^{-5/16}
constexpr double kExcursionSlit = 0.7071;    // quoted 2^{-1/2}
constexpr double kEightFive = 0.17678;       // quoted 2^{-5/2}
constexpr double kMcSlack = 0.02;
constexpr double kEightFiveSlack = 0.03;
constexpr double kKappa0Tol = 1e-9;
constexpr double kDimTarget = 4.0 / 3.0, kDimTol = 0.1, kSegmentTol = 0.02;
constexpr double kSlopeTol = 0.15;
constexpr double kNuTarget = 0.75, kNuTol = 0.03;
constexpr double kAgreeP = 0.01, kRejectP = 1e-3, kUniformityP = 0.01;
constexpr double kSchwarzTol = 1e-6;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

ComparisonReport run(const std::string& id) {
  ExperimentConfig c;
  c.id = id;
  c.seed = 1;
  return run_experiment(c);
}

double value(const ComparisonReport& r, const std::string& name) {
  return r.estimate(name).estimate.value;
}

double se(const ComparisonReport& r, const std::string& name) {
  return r.estimate(name).estimate.std_error;
}

const Table& table(const ComparisonReport& r, const std::string& name) {
  for (const auto& t : r.tables)
    if (t.name == name) return t;
  throw std::runtime_error("missing table " + name);
}

void within_mc(Outcome& o, const ComparisonReport& r, const std::string& name,
               double target, double slack) {
  const double v = value(r, name), s = se(r, name);
  o.detail << " " << name << "=" << v << "±" << s << " target=" << target;
  o.check(std::abs(v - target) <= 3.0 * s + slack, name + " outside 3SE+" +
                                                       std::to_string(slack));
}

void within_abs(Outcome& o, const ComparisonReport& r, const std::string& name,
                double target, double tol) {
  const double v = value(r, name);
  o.detail << " " << name << "=" << v << "±" << se(r, name) << " target=" << target;
  o.check(std::abs(v - target) <= tol, name + " outside ±" + std::to_string(tol));
}

void c01(Outcome& o) {
  const auto r = run("exact-counts");
  const auto& t = table(r, "counts");
  int compared = 0;
  for (const auto& row : t.rows) {
    const int n = int(row[0]);
    if (n > 10) continue;
    ++compared;
    o.check(std::uint64_t(row[1]) == oracle::count_saws(n),
            "C_" + std::to_string(n) + " differs from oracle");
  }
  o.check(compared == 11, "counts table incomplete");
  o.check(value(r, "C_1") == 4.0, "C_1 != 4");
  o.check(value(r, "submultiplicativity_violations") == 0.0,
          "submultiplicativity violated");
  o.detail << " n<=10 vs oracle, n_max=" << t.rows.back()[0];
}

void c02(Outcome& o) {
  const auto r = run("connective-constant");
  for (int n : {16, 17, 18}) {
    const double v = value(r, "ratio_n" + std::to_string(n));
    o.detail << " n=" << n << ":" << v;
    o.check(v >= kRatioLo && v <= kRatioHi, "ratio at n=" + std::to_string(n));
  }
}

void c03(Outcome& o) {
  const auto r = run("kesten");
  const auto& t = table(r, "kesten");
  double prev = 0.0;
  for (const auto& row : t.rows) {
    const int K = int(row[0]);
    const double b = row[2];
    if (K >= 2) o.check(b > prev, "beta_K not increasing at K=" + std::to_string(K));
    o.check(b < kKestenCap, "beta_K >= 2.7 at K=" + std::to_string(K));
    prev = b;
  }
  o.check(int(t.rows.back()[0]) == 14, "K range");
  o.check(value(r, "renewal_identity_mismatches") == 0.0,
          "first-renewal identity");
  o.detail << " beta_14=" << value(r, "beta_K")
           << " identity_mismatches=" << value(r, "renewal_identity_mismatches");
}

void c04(Outcome& o) {
  const auto r = run("exponent-algebra");
  const std::pair<const char*, double> want[] = {
      {"a", 5.0 / 8}, {"b", 5.0 / 48}, {"a_prime", 2.0}, {"b_prime", 2.0 / 3},
      {"alpha", 0.5}};
  for (const auto& [name, v] : want) {
    o.check(value(r, name) == v, name);
    o.detail << " " << name << "=" << value(r, name);
  }
  o.check(value(r, "exact_mismatches") == 0.0, "rational mismatch");
}

void c05(Outcome& o) {
  const auto r = run("chordal-restriction");
  within_mc(o, r, "avoidance", kRestrictionSlit, kMcSlack);
  o.detail << " tube=" << value(r, "avoidance_tube");
}

void c06(Outcome& o) {
  const auto r = run("excursion-cr1");
  within_mc(o, r, "avoidance", kExcursionSlit, kMcSlack);
  o.detail << " unresolved=" << value(r, "unresolved");
}

void c07(Outcome& o) {
  const auto r = run("radial-restriction");
  // Closed form from numerical derivatives of the map.
  const conformal::RadialRestrictionMap m(std::numbers::pi, 0.3);
  const double h = 1e-5;
  const double d0 = std::abs(m(Complex(h, 0)) - m(Complex(-h, 0))) / (2 * h);
  const double d1 =
      std::abs(m(std::polar(1.0, h)) - m(std::polar(1.0, -h))) / (2 * h);
  const double target = std::pow(d1, 5.0 / 8) * std::pow(d0, 5.0 / 48);
  o.check(std::abs(target - r.estimate("avoidance").prediction) < 1e-6,
          "closed form disagrees with numerical derivatives");
  within_mc(o, r, "avoidance", target, kMcSlack);
  const double k0 = value(r, "kappa0_max_error");
  o.detail << " kappa0_err=" << k0;
  o.check(k0 <= kKappa0Tol, "kappa=0 trace");
}

void c08(Outcome& o) {
  const auto r = run("eight-vs-five");
  const char* names[] = {"sle_eight", "excursion_five", "closed_form"};
  for (const char* n : names) o.detail << " " << n << "=" << value(r, n) << "±" << se(r, n);
  o.check(std::abs(value(r, "closed_form") - kEightFive) < 1e-5,
          "closed form vs quoted value");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double d = std::abs(value(r, names[i]) - value(r, names[j]));
      const double s = std::hypot(se(r, names[i]), se(r, names[j]));
      o.check(d <= 3.0 * s + kEightFiveSlack,
              std::string(names[i]) + " vs " + names[j]);
    }
}

void c09(Outcome& o) {
  const auto r = run("dimension");
  within_abs(o, r, "sle", kDimTarget, kDimTol);
  within_abs(o, r, "loop_frontier", kDimTarget, kDimTol);
  within_abs(o, r, "segment", 1.0, kSegmentTol);
  o.detail << " square=" << value(r, "square_region");
}

void c10(Outcome& o) {
  const auto r = run("non-disconnection");
  within_abs(o, r, "slope", 4.0 / 3.0, kSlopeTol);
}

void c11(Outcome& o) {
  const auto r = run("nu-pivot");
  within_abs(o, r, "nu", kNuTarget, kNuTol);
  const auto& u = r.test("pivot_uniformity");
  o.detail << " uniformity_p=" << u.p_value;
  o.check(u.p_value > kUniformityP, "pivot uniformity");
}

void c12(Outcome& o) {
  const auto r = run("saw-vs-sle");
  o.check(r.tests.size() == 6, "expected six KS tests");
  if (r.tests.size() != 6) return;
  bool any_reject = false;
  for (int i = 0; i < 6; ++i) {
    const auto& t = r.tests[i];
    o.detail << " " << t.name << ":p=" << t.p_value;
    if (i < 3)
      o.check(t.p_value > kAgreeP, t.name + " rejects");
    else
      any_reject |= t.p_value < kRejectP;
  }
  o.check(any_reject, "kappa=6 not discriminated");
}

void c13(Outcome& o) {
  const auto r = run("schwarzian");
  const double diff = value(r, "max_abs_difference");
  o.detail << " max_diff=" << diff << " bubble=" << value(r, "bubble_closed_form")
           << "/" << value(r, "bubble_finite_difference");
  o.check(diff <= kSchwarzTol, "schwarzian routes differ");
  o.check(std::abs(value(r, "bubble_closed_form") - 15.0 / 128) <= kSchwarzTol,
          "closed-form bubble");
  o.check(std::abs(value(r, "bubble_finite_difference") - 15.0 / 128) <= kSchwarzTol,
          "finite-difference bubble");
}

struct Criterion {
  const char* label;
  void (*fn)(Outcome&);
};

const Criterion kCriteria[] = {
    {"exact counts", c01},           {"connective constant", c02},
    {"kesten relation", c03},        {"exponent algebra", c04},
    {"chordal restriction", c05},    {"excursion CR(1)", c06},
    {"radial restriction", c07},     {"eight vs five", c08},
    {"dimension 4/3", c09},          {"non-disconnection", c10},
    {"nu pivot", c11},               {"saw vs sle", c12},
    {"schwarzian bubble", c13}};

bool run_one(int k) {
  Outcome o;
  o.detail.precision(6);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    kCriteria[k - 1].fn(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %02d %s: %s%s (%.1fs)\n", k, kCriteria[k - 1].label,
              o.pass ? "PASS" : "FAIL", o.detail.str().c_str(), secs);
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <1..13|all>\n");
    return 2;
  }
  const std::string arg = argv[1];
  bool ok = true;
  if (arg == "all") {
    for (int k = 1; k <= 13; ++k) ok &= run_one(k);
  } else {
    const int k = std::atoi(arg.c_str());
    if (k < 1 || k > 13) {
      std::fprintf(stderr, "unknown criterion %s\n", arg.c_str());
      return 2;
    }
    ok = run_one(k);
  }
  return ok ? 0 : 1;
}
