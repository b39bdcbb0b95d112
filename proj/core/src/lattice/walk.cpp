#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "sawlab/error.hpp"
#include "sawlab/lattice.hpp"

namespace sawlab::lattice {

LatticePoint::LatticePoint(std::vector<Coord> coords)
    : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    throw InvalidArgument("LatticePoint: dimension must be >= 2");
}

Walk::Walk(int dim, std::vector<Coord> flat, WalkKind kind)
    : dim_(dim), flat_(std::move(flat)), kind_(kind) {
  if (dim_ < 2) throw InvalidArgument("Walk: dimension must be >= 2");
  if (flat_.empty() || flat_.size() % dim_ != 0)
    throw InvalidArgument("Walk: coordinate array is not a list of points");
  const std::size_t np = num_points();
  for (std::size_t i = 0; i + 1 < np; ++i) {
    long l1 = 0;
    for (int a = 0; a < dim_; ++a)
      l1 += std::labs(long(coord(i + 1, a)) - long(coord(i, a)));
    if (l1 != 1)
      throw InvalidArgument("Walk: points " + std::to_string(i) + " and " +
                            std::to_string(i + 1) + " are not neighbours");
  }
  std::size_t distinct = np;
  if (kind_ == WalkKind::polygon) {
    const std::size_t n = length();
    if (n < 4 || n % 2 != 0)
      throw InvalidArgument("Walk: polygon length must be even and >= 4");
    if (!std::equal(flat_.begin(), flat_.begin() + dim_,
                    flat_.end() - dim_))
      throw InvalidArgument("Walk: polygon does not close");
    distinct = np - 1;
  }
  std::vector<std::size_t> idx(distinct);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto pt = [&](std::size_t i) {
    return std::span<const Coord>(flat_.data() + i * dim_, dim_);
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    auto pa = pt(a), pb = pt(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(),
                                        pb.end());
  });
  for (std::size_t i = 1; i < idx.size(); ++i) {
    auto pa = pt(idx[i - 1]), pb = pt(idx[i]);
    if (std::equal(pa.begin(), pa.end(), pb.begin()))
      throw InvalidArgument("Walk: site visited twice");
  }
}

Walk Walk::from_directions(int dim, std::span<const Direction> steps,
                           WalkKind kind) {
  if (dim < 2) throw InvalidArgument("Walk: dimension must be >= 2");
  std::vector<Coord> flat((steps.size() + 1) * dim, 0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int axis = steps[i] / 2;
    if (axis >= dim) throw InvalidArgument("Walk: direction out of range");
    std::copy_n(flat.begin() + i * dim, dim, flat.begin() + (i + 1) * dim);
    flat[(i + 1) * dim + axis] += (steps[i] % 2 == 0) ? 1 : -1;
  }
  return Walk(dim, std::move(flat), kind);
}

LatticePoint Walk::point(std::size_t i) const {
  return LatticePoint(std::vector<Coord>(flat_.begin() + i * dim_,
                                         flat_.begin() + (i + 1) * dim_));
}

std::vector<Direction> Walk::directions() const {
  std::vector<Direction> out(length());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int a = 0; a < dim_; ++a) {
      const Coord d = coord(i + 1, a) - coord(i, a);
      if (d != 0) out[i] = static_cast<Direction>(2 * a + (d > 0 ? 0 : 1));
    }
  return out;
}

bool Walk::in_half_space() const {
  for (std::size_t j = 1; j < num_points(); ++j)
    if (coord(j, 0) <= coord(0, 0)) return false;
  return true;
}

std::vector<int> renewal_times(const Walk& w) {
  if (w.kind() != WalkKind::open || !w.in_half_space())
    throw InvalidArgument("renewal_times: walk is not in the half-space");
  const int n = static_cast<int>(w.length());
  std::vector<Coord> suffix_min(n + 1);
  suffix_min[n] = w.coord(n, 0);
  for (int j = n - 1; j >= 0; --j)
    suffix_min[j] = std::min(suffix_min[j + 1], w.coord(j, 0));
  std::vector<int> out;
  Coord prefix_max = w.coord(0, 0);
  for (int j = 1; j < n; ++j) {
    const Coord x = w.coord(j, 0);
    prefix_max = std::max(prefix_max, x);
    if (x == prefix_max && x < suffix_min[j + 1]) out.push_back(j);
  }
  return out;
}

bool is_bridge(const Walk& w, BridgeConvention convention) {
  if (w.kind() != WalkKind::open || w.length() == 0) return false;
  const std::size_t n = w.length();
  const Coord xn = w.coord(n, 0);
  const std::size_t first = convention == BridgeConvention::standard ? 1 : 2;
  const Coord lower =
      convention == BridgeConvention::standard ? w.coord(0, 0) : w.coord(1, 0);
  for (std::size_t j = first; j <= n; ++j) {
    const Coord x = w.coord(j, 0);
    if (!(lower < x && x <= xn)) return false;
  }
  return true;
}

}  // namespace sawlab::lattice
