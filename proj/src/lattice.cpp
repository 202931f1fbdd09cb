#include "lrb/lattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lrb {

Lattice::Lattice(int dim, std::vector<std::array<double, 2>> positions)
    : dim_(dim), positions_(std::move(positions)) {
  if (dim_ < 1 || dim_ > 2)
    throw std::invalid_argument("Lattice: dim must be 1 or 2");
  if (positions_.empty())
    throw std::invalid_argument("Lattice: no sites");
  min_spacing_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions_.size(); ++i)
    for (std::size_t j = i + 1; j < positions_.size(); ++j)
      min_spacing_ = std::min(
          min_spacing_, distance(static_cast<int>(i), static_cast<int>(j)));
  if (positions_.size() > 1 && min_spacing_ < 1.0 - 1e-12)
    throw std::invalid_argument("Lattice: pairwise distances must be >= 1");
}

Lattice Lattice::chain(int length) {
  if (length < 1) throw std::invalid_argument("Lattice::chain: length < 1");
  std::vector<std::array<double, 2>> pos;
  pos.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i)
    pos.push_back({static_cast<double>(i), 0.0});
  return Lattice(1, std::move(pos));
}

Lattice Lattice::square(int lx, int ly) {
  if (lx < 1 || ly < 1)
    throw std::invalid_argument("Lattice::square: side < 1");
  std::vector<std::array<double, 2>> pos;
  pos.reserve(static_cast<std::size_t>(lx) * static_cast<std::size_t>(ly));
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x)
      pos.push_back({static_cast<double>(x), static_cast<double>(y)});
  return Lattice(2, std::move(pos));
}

double Lattice::distance(int a, int b) const {
  const auto& pa = positions_.at(static_cast<std::size_t>(a));
  const auto& pb = positions_.at(static_cast<std::size_t>(b));
  return std::hypot(pa[0] - pb[0], pa[1] - pb[1]);
}

double Lattice::set_distance(std::span<const int> a,
                             std::span<const int> b) const {
  if (a.empty() || b.empty())
    throw std::invalid_argument("Lattice::set_distance: empty set");
  double best = std::numeric_limits<double>::infinity();
  for (int i : a)
    for (int j : b) best = std::min(best, distance(i, j));
  return best;
}

double Lattice::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < positions_.size(); ++i)
    for (std::size_t j = i + 1; j < positions_.size(); ++j)
      best = std::max(best,
                      distance(static_cast<int>(i), static_cast<int>(j)));
  return best;
}

}  // namespace lrb
