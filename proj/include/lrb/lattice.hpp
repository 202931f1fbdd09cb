#pragma once

#include <array>
#include <span>
#include <vector>

namespace lrb {

// Finite set of sites embedded in Euclidean space, minimum spacing 1.
class Lattice {
 public:
  Lattice(int dim, std::vector<std::array<double, 2>> positions);

  static Lattice chain(int length);
  static Lattice square(int lx, int ly);

  int dim() const { return dim_; }
  std::size_t size() const { return positions_.size(); }
  double distance(int a, int b) const;
  double set_distance(std::span<const int> a, std::span<const int> b) const;
  double min_spacing() const { return min_spacing_; }
  double diameter() const;
  const std::vector<std::array<double, 2>>& positions() const {
    return positions_;
  }

  bool operator==(const Lattice& other) const = default;

 private:
  int dim_;
  std::vector<std::array<double, 2>> positions_;
  double min_spacing_;
};

}  // namespace lrb
