#include <algorithm>
#include <cmath>

#include "sawlab/error.hpp"
#include "sawlab/mcsaw.hpp"

namespace sawlab::mcsaw {
namespace {

struct MassWalker {
  MassKind kind;
  int max_len;
  double beta;
  const std::vector<double>& radii;
  std::vector<double>& mass;
  int side;
  std::vector<std::uint8_t> occ;
  std::vector<std::pair<int, int>> pts;

  int cell(int x, int y) const {
    return (y + max_len + 1) * side + (x + max_len + 1);
  }

  void deposit(double diam, int length) {
    const double w = std::pow(beta, -length);
    for (std::size_t r = 0; r < radii.size(); ++r)
      if (diam >= radii[r] && diam < 2.0 * radii[r]) mass[r] += w;
  }

  static std::int64_t dist2(std::pair<int, int> a, std::pair<int, int> b) {
    const std::int64_t dx = a.first - b.first, dy = a.second - b.second;
    return dx * dx + dy * dy;
  }

  void visit(std::int64_t diam2) {
    const int m = static_cast<int>(pts.size()) - 1;
    const auto end = pts.back();
    switch (kind) {
      case MassKind::saw_free:
      case MassKind::saw_half:
        if (m >= 1) deposit(std::sqrt(double(diam2)), m);
        break;
      case MassKind::sap_free:
        if (m >= 3 && dist2(end, {0, 0}) == 1 && m + 1 <= max_len)
          deposit(std::sqrt(double(diam2)), m + 1);
        break;
      case MassKind::sap_half:
        // Close through (+-1, 0), the only admissible sites at height 0.
        if (m >= 2 && m + 2 <= max_len)
          for (int sx : {1, -1}) {
            const std::pair<int, int> s{sx, 0};
            if (dist2(end, s) != 1) continue;
            std::int64_t d2 = diam2;
            for (const auto& p : pts) d2 = std::max(d2, dist2(p, s));
            deposit(std::sqrt(double(d2)), m + 2);
          }
        break;
    }
    if (m == max_len) return;
    const bool half = kind == MassKind::saw_half || kind == MassKind::sap_half;
    static constexpr int dx[4] = {1, -1, 0, 0};
    static constexpr int dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const std::pair<int, int> next{end.first + dx[k], end.second + dy[k]};
      if (half && next.second <= 0) continue;
      const int c = cell(next.first, next.second);
      if (occ[c]) continue;
      std::int64_t d2 = diam2;
      for (const auto& p : pts) d2 = std::max(d2, dist2(p, next));
      occ[c] = 1;
      pts.push_back(next);
      visit(d2);
      pts.pop_back();
      occ[c] = 0;
    }
  }
};

double target_for(MassKind kind) {
  const auto e = exponent_algebra(Rational(3, 4), Rational(43, 32),
                                  Rational(25, 64));
  Rational t;
  switch (kind) {
    case MassKind::saw_free: t = e.gamma / e.nu; break;
    case MassKind::saw_half: t = (e.gamma - e.rho) / e.nu; break;
    case MassKind::sap_free: t = 1 / e.nu - 2; break;
    case MassKind::sap_half: t = (e.alpha - 2) / e.nu; break;
  }
  return boost::rational_cast<double>(t);
}

}  // namespace

MassScaling diameter_mass_scaling(MassKind kind,
                                  const std::vector<double>& radii,
                                  int max_length, double beta) {
  if (radii.size() < 2)
    throw InvalidArgument("diameter_mass_scaling: need >= 2 radii");
  if (max_length < 1) throw InvalidArgument("max_length must be >= 1");
  if (max_length > 18)
    throw ResourceLimit("diameter_mass_scaling: max_length above 18");
  if (!(beta > 1.0)) throw InvalidArgument("beta must be > 1");
  MassScaling out;
  out.kind = kind;
  out.radii = radii;
  out.mass.assign(radii.size(), 0.0);
  MassWalker w{kind, max_length, beta, out.radii, out.mass,
               2 * max_length + 3, {}, {{0, 0}}};
  w.occ.assign(std::size_t(w.side) * w.side, 0);
  w.occ[w.cell(0, 0)] = 1;
  w.visit(0);

  std::vector<double> x, y;
  for (std::size_t r = 0; r < radii.size(); ++r)
    if (out.mass[r] > 0.0) {
      x.push_back(std::log(radii[r]));
      y.push_back(std::log(out.mass[r]));
    }
  out.exponent.n_samples = 1;
  out.exponent.window = "R=" + std::to_string(radii.front()) + ".." +
                        std::to_string(radii.back()) +
                        ", length <= " + std::to_string(max_length);
  out.exponent.flagged = true;
  out.exponent.note =
      "exact enumeration truncated in length; bins with 2R beyond the "
      "truncation are biased low";
  if (x.size() < 2) {
    out.exponent.value = std::nan("");
    out.exponent.std_error = std::numeric_limits<double>::infinity();
    out.exponent.note += "; fewer than two nonempty bins";
  } else {
    const auto fit = stats::fit_line(x, y);
    out.exponent.value = fit.slope;
    out.exponent.std_error = fit.slope_se;
    if (x.size() < radii.size()) out.exponent.note += "; empty bins dropped";
  }
  out.target = target_for(kind);
  return out;
}

}  // namespace sawlab::mcsaw
