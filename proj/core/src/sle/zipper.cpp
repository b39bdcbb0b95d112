#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sawlab/error.hpp"
#include "sawlab/sle.hpp"

namespace sawlab::sle {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Root of a + ib with Im >= 0; on the cut the real part takes the sign of
// `hint`. Two real square roots and one division.
inline void sqrt_up(double a, double b, double hint, double& x, double& y) {
  const double m = std::sqrt(a * a + b * b);
  if (a >= 0.0) {
    x = std::sqrt(0.5 * (m + a));
    y = x > 0.0 ? 0.5 * b / x : 0.0;
    if (y < 0.0 || (y == 0.0 && hint < 0.0)) {
      x = -x;
      y = -y;
    }
  } else {
    y = std::sqrt(0.5 * (m - a));
    x = 0.5 * b / y;
  }
}

// w -> W + sqrt((w - W)^2 - 4 delta): inverse of one chordal step.
inline void chordal_inverse(double W, double four_delta, double& re,
                            double& im) {
  const double u = re - W;
  double x, y;
  sqrt_up(u * u - im * im - four_delta, 2.0 * u * im, u, x, y);
  re = W + x;
  im = y;
}

void check_grid(const std::vector<double>& t) {
  if (t.size() < 2) throw InvalidArgument("time grid needs >= 2 points");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw InvalidArgument("time grid must be strictly increasing");
}

void check_path(const DrivingPath& p) {
  check_grid(p.times);
  if (p.values.size() != p.times.size())
    throw InvalidArgument("driving path: values and times differ in size");
}

// Radial slit step of log-capacity delta with the slit at 1:
// k(z) = z / (1 + z)^2 maps D onto C \ [1/4, inf).
inline Complex koebe(Complex z) { return z / ((1.0 + z) * (1.0 + z)); }

inline Complex koebe_inverse(Complex u) {
  return 2.0 * u / (1.0 - 2.0 * u + std::sqrt(1.0 - 4.0 * u));
}

double radial_tip(double delta) {
  const double e = std::exp(delta);
  return 2.0 * e - 1.0 - 2.0 * std::sqrt(e * e - e);
}

// Inverse of one radial step, rotated to the driving point `rot`. The step is
// retried as two half steps when the result leaves the closed disk.
Complex radial_inverse_step(Complex w, Complex rot, double delta,
                            double shrink) {
  auto apply = [](Complex v, double s) {
    return koebe_inverse(koebe(v) * s);
  };
  auto bad = [](Complex z) {
    return !std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
           std::abs(z) > 1.0 + 1e-9;
  };
  const Complex v = w * std::conj(rot);
  Complex out = apply(v, shrink);
  if (bad(out)) {
    const double half = std::exp(-0.5 * delta);
    out = apply(apply(v, half), half);
    if (bad(out)) throw NumericError("radial step left the disk after halving");
  }
  return out * rot;
}

Complex radial_forward_step(Complex z, double W, double delta) {
  const Complex rot = std::polar(1.0, W);
  const Complex v = z * std::conj(rot);
  return koebe_inverse(koebe(v) * std::exp(delta)) * rot;
}

void check_finite(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im))
    throw NumericError("chordal zipper produced a non-finite point");
}

}  // namespace

std::vector<double> make_time_grid(GridKind kind, double T, int N,
                                   double t_min) {
  if (N < 1) throw InvalidArgument("time grid: N must be >= 1");
  if (!(T > 0.0)) throw InvalidArgument("time grid: T must be > 0");
  std::vector<double> t(N + 1);
  switch (kind) {
    case GridKind::uniform:
      for (int k = 0; k <= N; ++k) t[k] = T * k / N;
      break;
    case GridKind::quadratic:
      for (int k = 0; k <= N; ++k) {
        const double s = double(k) / N;
        t[k] = T * s * s;
      }
      break;
    case GridKind::geometric:
      if (!(t_min > 0.0) || !(t_min < T))
        throw InvalidArgument("geometric grid: need 0 < t_min < T");
      t[0] = 0.0;
      if (N == 1) {
        t[1] = T;
        break;
      }
      for (int k = 1; k <= N; ++k)
        t[k] = t_min * std::pow(T / t_min, double(k - 1) / (N - 1));
      t[N] = T;
      break;
  }
  return t;
}

DrivingPath brownian_driving(double kappa, std::vector<double> times, Rng& rng,
                             double w0) {
  if (!(kappa >= 0.0)) throw InvalidArgument("kappa must be >= 0");
  check_grid(times);
  DrivingPath p;
  p.kappa = kappa;
  p.values.resize(times.size());
  p.values[0] = w0;
  std::normal_distribution<double> gauss;
  for (std::size_t i = 1; i < times.size(); ++i)
    p.values[i] = p.values[i - 1] +
                  std::sqrt(kappa * (times[i] - times[i - 1])) * gauss(rng);
  p.times = std::move(times);
  return p;
}

PlanarCurve chordal_trace(const DrivingPath& path) {
  check_path(path);
  const std::size_t n = path.times.size() - 1;
  const double* W = path.values.data();
  std::vector<double> fd(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k)
    fd[k] = 4.0 * (path.times[k] - path.times[k - 1]);

  PlanarCurve c;
  c.geometry = Geometry::half_plane;
  c.times = path.times;
  c.points.resize(n + 1);
  c.points[0] = W[0];

  constexpr std::size_t L = 8;
  for (std::size_t k0 = 1; k0 <= n; k0 += L) {
    const std::size_t lanes = std::min(L, n + 1 - k0);
    double re[L], im[L];
    for (std::size_t l = 0; l < lanes; ++l) {
      const std::size_t k = k0 + l;
      re[l] = W[k];
      im[l] = std::sqrt(fd[k]);
      for (std::size_t j = k - 1; j >= k0; --j)
        chordal_inverse(W[j], fd[j], re[l], im[l]);
    }
    for (std::size_t j = k0 - 1; j >= 1; --j) {
      const double w = W[j], f = fd[j];
      for (std::size_t l = 0; l < lanes; ++l)
        chordal_inverse(w, f, re[l], im[l]);
    }
    for (std::size_t l = 0; l < lanes; ++l) {
      check_finite(re[l], im[l]);
      c.points[k0 + l] = Complex(re[l], im[l]);
    }
  }
  return c;
}

PlanarCurve chordal_trace(double kappa, double T, int N, Rng& rng,
                          GridKind grid) {
  return chordal_trace(
      brownian_driving(kappa, make_time_grid(grid, T, N), rng));
}

Complex chordal_forward_map(const DrivingPath& path, Complex z) {
  check_path(path);
  double re = z.real(), im = z.imag();
  if (im < 0.0) throw InvalidArgument("chordal map: z must lie in closed H");
  for (std::size_t k = 1; k < path.times.size(); ++k) {
    const double W = path.values[k];
    const double u = re - W;
    double x, y;
    sqrt_up(u * u - im * im + 4.0 * (path.times[k] - path.times[k - 1]),
            2.0 * u * im, u, x, y);
    re = W + x;
    im = y;
  }
  return {re, im};
}

double chordal_capacity(const DrivingPath& path, double radius, int nodes) {
  if (nodes < 4) throw InvalidArgument("capacity: need >= 4 nodes");
  // (1/2 pi i) int (g(z) - z) dz over |z| = R; g(conj z) = conj g(z).
  double sum = 0.0;
  for (int m = 0; m <= nodes; ++m) {
    const double th = std::numbers::pi * m / nodes;
    const Complex z = std::polar(radius, th);
    const Complex term =
        (chordal_forward_map(path, Complex(z.real(), std::max(0.0, z.imag()))) -
         z) *
        z;
    sum += (m == 0 || m == nodes ? 0.5 : 1.0) * term.real();
  }
  return sum / nodes;
}

PlanarCurve radial_trace(const DrivingPath& path) {
  check_path(path);
  const std::size_t n = path.times.size() - 1;
  PlanarCurve c;
  c.geometry = Geometry::disk;
  c.times = path.times;
  c.points.resize(n + 1);
  c.points[0] = std::polar(1.0, path.values[0]);
  std::vector<Complex> rot(n + 1);
  std::vector<double> delta(n + 1, 0.0), shrink(n + 1, 1.0);
  for (std::size_t k = 1; k <= n; ++k) {
    rot[k] = std::polar(1.0, path.values[k]);
    delta[k] = path.times[k] - path.times[k - 1];
    shrink[k] = std::exp(-delta[k]);
  }
  for (std::size_t k = 1; k <= n; ++k) {
    Complex z = radial_tip(delta[k]) * rot[k];
    for (std::size_t j = k - 1; j >= 1; --j)
      z = radial_inverse_step(z, rot[j], delta[j], shrink[j]);
    c.points[k] = z;
  }
  return c;
}

PlanarCurve radial_trace(double kappa, double T, int N, Rng& rng,
                         GridKind grid, double w0) {
  return radial_trace(
      brownian_driving(kappa, make_time_grid(grid, T, N), rng, w0));
}

Complex radial_forward_map(const DrivingPath& path, Complex z) {
  check_path(path);
  if (std::abs(z) > 1.0) throw InvalidArgument("radial map: |z| must be <= 1");
  for (std::size_t k = 1; k < path.times.size(); ++k)
    z = radial_forward_step(z, path.values[k],
                            path.times[k] - path.times[k - 1]);
  return z;
}

PlanarCurve full_plane_trace(double kappa, double K, double T, int N,
                             Rng& rng) {
  if (!(K < 0.0) || !(T >= 0.0))
    throw InvalidArgument("full-plane trace: need K < 0 <= T");
  if (N < 2) throw InvalidArgument("full-plane trace: N must be >= 2");
  if (!(kappa >= 0.0)) throw InvalidArgument("kappa must be >= 0");
  // Uniform grid on [K, T] with t = 0 included.
  std::vector<double> times;
  for (int k = 0; k <= N; ++k) times.push_back(K + (T - K) * k / N);
  times.back() = T;
  if (std::find(times.begin(), times.end(), 0.0) == times.end()) {
    times.push_back(0.0);
    std::sort(times.begin(), times.end());
  }
  const std::size_t zero =
      std::find(times.begin(), times.end(), 0.0) - times.begin();

  std::vector<double> W(times.size());
  W[zero] = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
  std::normal_distribution<double> gauss;
  for (std::size_t i = zero; i-- > 0;)
    W[i] = W[i + 1] + std::sqrt(kappa * (times[i + 1] - times[i])) * gauss(rng);
  for (std::size_t i = zero + 1; i < times.size(); ++i)
    W[i] = W[i - 1] + std::sqrt(kappa * (times[i] - times[i - 1])) * gauss(rng);

  // Interior radial chain on s = t - K. With g_K(z) = e^{-K} z, reflecting
  // in the unit circle turns the exterior chain into the interior chain
  // started from e^K z.
  DrivingPath radial;
  radial.kappa = kappa;
  radial.values = W;
  for (double t : times) radial.times.push_back(t - K);
  PlanarCurve inner = radial_trace(radial);

  PlanarCurve c;
  c.geometry = Geometry::plane;
  c.times = times;
  c.points.reserve(inner.size());
  const double scale = std::exp(K);
  for (const Complex& z : inner.points) c.points.push_back(scale / std::conj(z));
  return c;
}

double simplicity_gap(const PlanarCurve& trace, double frac) {
  if (!trace.has_times() || trace.size() < 2)
    throw InvalidArgument("simplicity_gap: trace needs time stamps");
  const double span = frac * (trace.times.back() - trace.times.front());
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = trace.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + 1;
    while (j < n && trace.times[j] - trace.times[i] <= span) ++j;
    for (; j < n; ++j)
      best = std::min(best, std::abs(trace.points[i] - trace.points[j]));
  }
  return best;
}

}  // namespace sawlab::sle
