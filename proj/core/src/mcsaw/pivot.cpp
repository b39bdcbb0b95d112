#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "sawlab/error.hpp"
#include "sawlab/mcsaw.hpp"

namespace sawlab::mcsaw {

std::vector<LatticeSymmetry> lattice_symmetries(int dim) {
  if (dim < 2) throw InvalidArgument("lattice_symmetries: dim must be >= 2");
  std::vector<LatticeSymmetry> out;
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (int mask = 0; mask < (1 << dim); ++mask) {
      LatticeSymmetry g{perm, std::vector<int>(dim)};
      for (int a = 0; a < dim; ++a) g.sign[a] = (mask >> a) & 1 ? -1 : 1;
      out.push_back(std::move(g));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;  // identity permutation with mask 0 comes first
}

namespace {

std::uint64_t hash_key(std::uint64_t k) {
  k ^= k >> 31;
  k *= 0x9E3779B97F4A7C15ULL;
  return k ^ (k >> 29);
}

}  // namespace

PivotChain::PivotChain(int n, int dim, Domain domain, ChainMode mode)
    : n_(n), dim_(dim), domain_(domain), mode_(mode) {
  if (n < 1) throw InvalidArgument("PivotChain: n must be >= 1");
  if (dim < 2) throw InvalidArgument("PivotChain: dim must be >= 2");
  const int axis = domain == Domain::plane ? 0 : dim - 1;
  pts_.assign(static_cast<std::size_t>(n + 1) * dim, 0);
  for (int j = 0; j <= n; ++j) pts_[j * dim + axis] = j;
  syms_ = lattice_symmetries(dim);
  rebuild_index();
}

PivotChain::PivotChain(const Walk& initial, Domain domain, ChainMode mode)
    : n_(static_cast<int>(initial.length())),
      dim_(initial.dim()),
      domain_(domain),
      mode_(mode) {
  if (n_ < 1) throw InvalidArgument("PivotChain: n must be >= 1");
  pts_.assign(initial.flat().begin(), initial.flat().end());
  for (int a = 0; a < dim_; ++a) {
    const Coord o = pts_[a];
    for (int j = 0; j <= n_; ++j) pts_[j * dim_ + a] -= o;
  }
  if (domain == Domain::half_plane && !in_half_space(dim_ - 1, 1))
    throw InvalidArgument("PivotChain: initial walk leaves the half-plane");
  syms_ = lattice_symmetries(dim_);
  rebuild_index();
}

Walk PivotChain::current() const { return Walk(dim_, pts_); }

void PivotChain::rebuild_index() {
  if (mode_ == ChainMode::random_walk) return;
  const int bits = 64 / dim_;
  const std::int64_t limit = (std::int64_t{1} << (bits - 1)) - 1;
  if (n_ >= limit)
    throw InvalidArgument("PivotChain: walk too long for the site index");
  const std::size_t cap = std::bit_ceil(std::size_t(4) * (n_ + 1));
  mask_ = cap - 1;
  keys_.assign(cap, 0);
  vals_.assign(cap, -1);
  for (int j = 0; j <= n_; ++j) {
    std::uint64_t key = 0;
    for (int a = 0; a < dim_; ++a)
      key = (key << bits) | std::uint64_t(pts_[j * dim_ + a] + limit + 1);
    std::uint64_t h = hash_key(key) & mask_;
    while (keys_[h] != 0) h = (h + 1) & mask_;
    keys_[h] = key;
    vals_[h] = j;
  }
}

bool PivotChain::admissible_tail(int pivot, const LatticeSymmetry& g) {
  const int d = dim_;
  trial_.resize(pts_.size());
  const Coord* base = &pts_[pivot * d];
  const bool check_sites = mode_ == ChainMode::self_avoiding;
  const int bits = 64 / d;
  const std::int64_t bias = std::int64_t{1} << (bits - 1);
  // New sites are generated from the pivot outward so that the common
  // collisions close to the pivot are found first.
  for (int j = pivot + 1; j <= n_; ++j) {
    Coord* q = &trial_[j * d];
    const Coord* p = &pts_[j * d];
    for (int a = 0; a < d; ++a)
      q[g.perm[a]] = base[g.perm[a]] + g.sign[a] * (p[a] - base[a]);
    if (domain_ == Domain::half_plane && q[d - 1] <= 0) return false;
    if (!check_sites) continue;
    std::uint64_t key = 0;
    for (int a = 0; a < d; ++a) key = (key << bits) | std::uint64_t(q[a] + bias);
    for (std::uint64_t h = hash_key(key) & mask_; keys_[h] != 0;
         h = (h + 1) & mask_)
      if (keys_[h] == key) {
        if (vals_[h] <= pivot) return false;
        break;
      }
  }
  return true;
}

PivotOutcome PivotChain::propose(int pivot, int symmetry) {
  if (pivot < 0 || pivot > n_ || symmetry < 0 ||
      symmetry >= symmetry_count())
    throw InvalidArgument("PivotChain::propose: bad pivot or symmetry");
  ++proposed_;
  PivotOutcome out{false, pivot, symmetry};
  if (symmetry == 0 || pivot == n_) {
    out.accepted = true;
    ++accepted_;
    return out;
  }
  if (!admissible_tail(pivot, syms_[symmetry])) return out;
  std::copy(trial_.begin() + (pivot + 1) * dim_, trial_.end(),
            pts_.begin() + (pivot + 1) * dim_);
  rebuild_index();
  out.accepted = true;
  ++accepted_;
  return out;
}

PivotOutcome PivotChain::step(Rng& rng) {
  // Pivot 0 is included: without it the first step never changes and the
  // chain cannot reach every walk.
  std::uniform_int_distribution<int> site(0, n_ - 1);
  std::uniform_int_distribution<int> sym(1, symmetry_count() - 1);
  const int k = site(rng);
  return propose(k, sym(rng));
}

void PivotChain::thermalize(std::uint64_t moves, Rng& rng) {
  const std::uint64_t target = accepted_ + moves;
  while (accepted_ < target) step(rng);
}

double PivotChain::end_to_end_squared() const {
  double s = 0.0;
  for (int a = 0; a < dim_; ++a) {
    const double v = pts_[n_ * dim_ + a] - pts_[a];
    s += v * v;
  }
  return s;
}

double PivotChain::diameter() const {
  if (dim_ == 2) return planar_diameter(pts_);
  double best = 0.0;
  for (int i = 0; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j) {
      double s = 0.0;
      for (int a = 0; a < dim_; ++a) {
        const double v = pts_[i * dim_ + a] - pts_[j * dim_ + a];
        s += v * v;
      }
      best = std::max(best, s);
    }
  return std::sqrt(best);
}

bool PivotChain::in_half_space(int axis, int sign) const {
  for (int j = 1; j <= n_; ++j)
    if (sign * pts_[j * dim_ + axis] <= 0) return false;
  return true;
}

double planar_diameter(std::span<const Coord> xy) {
  using P = std::pair<std::int64_t, std::int64_t>;
  std::vector<P> pts(xy.size() / 2);
  for (std::size_t i = 0; i < pts.size(); ++i)
    pts[i] = {xy[2 * i], xy[2 * i + 1]};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return 0.0;
  auto cross = [](const P& o, const P& a, const P& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<P> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  std::int64_t best = 0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) {
      const std::int64_t dx = hull[i].first - hull[j].first;
      const std::int64_t dy = hull[i].second - hull[j].second;
      best = std::max(best, dx * dx + dy * dy);
    }
  return std::sqrt(static_cast<double>(best));
}

}  // namespace sawlab::mcsaw
