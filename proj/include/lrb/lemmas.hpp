#pragma once

#include <functional>
#include <vector>

#include "lrb/lattice.hpp"

namespace lrb {

// Smallest C with int_rho^inf e^{-x^nu} x^mu dx <= C e^{-rho^nu}
// (1 + rho^{mu-nu+1}) over the grid. The integral is evaluated by adaptive
// quadrature after the u = x^nu substitution; the tail is carried until it
// drops below 1e-14 of the total.
double check_incomplete_gamma(double mu, double nu,
                              const std::vector<double>& rho_grid);

// Smallest C with sum_{z: 1 <= d(z,x) <= R} decay(d(z,x))
// <= C int_{1/2}^R decay(r) r^{d-1} dr for every site x. Returns 0 for an
// identically-zero sum; errors if the integral vanishes while the sum does
// not.
double check_sum_vs_integral(const Lattice& lattice,
                             const std::function<double(double)>& decay,
                             double R);

}  // namespace lrb
