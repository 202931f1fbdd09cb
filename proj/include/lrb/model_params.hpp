#pragma once

#include <algorithm>
#include <stdexcept>

#include "lrb/constants.hpp"

namespace lrb {

// Assumption bundle for a power-law interacting model: f(R) <= J R^{-alpha}
// with alpha > d, per-site budget C0, and an observable A supported on |X|
// sites. Lattice spacing a = 1 is baked in.
struct ModelParams {
  double alpha = 2.0;   // power-law exponent, > dim
  int dim = 1;          // spatial dimension
  double j_const = 1.0; // interaction strength J
  double c0 = 1.0;      // per-site interaction budget
  int x_size = 1;       // |X|
  ConstantRegistry constants;

  // v = C2 max(J, C0)
  double velocity() const {
    return constants.get("c2") * std::max(j_const, c0);
  }

  void validate() const {
    if (!(alpha > static_cast<double>(dim)))
      throw std::invalid_argument("ModelParams: alpha must exceed dim");
    if (dim < 1) throw std::invalid_argument("ModelParams: dim must be >= 1");
    if (j_const < 0.0 || c0 < 0.0)
      throw std::invalid_argument("ModelParams: J and C0 must be nonnegative");
    if (x_size < 1) throw std::invalid_argument("ModelParams: |X| must be >= 1");
    if (!(velocity() > 0.0))
      throw std::invalid_argument("ModelParams: velocity must be positive");
  }
};

}  // namespace lrb
