#include "lrb/lemmas.hpp"

#include <cmath>
#include <stdexcept>

#include "lrb/quadrature.hpp"

namespace lrb {

namespace {

// int_rho^inf e^{-x^nu} x^mu dx = (1/nu) int_{rho^nu}^inf e^{-u} u^{s-1} du
// with s = (mu+1)/nu.
double stretched_tail_integral(double mu, double nu, double rho) {
  const double s = (mu + 1.0) / nu;
  const double a = std::pow(rho, nu);
  auto integrand = [s](double u) { return std::exp(-u) * std::pow(u, s - 1.0); };
  // Split at the integrand's maximum when it lies inside the range.
  const double peak = s - 1.0;
  double total = 0.0;
  double lo = a;
  if (peak > a) {
    total += integrate(integrand, a, peak, 1e-12);
    lo = peak;
  }
  total += integrate_semi_infinite(integrand, lo, 1e-12);
  return total / nu;
}

}  // namespace

double check_incomplete_gamma(double mu, double nu,
                              const std::vector<double>& rho_grid) {
  if (rho_grid.empty())
    throw std::invalid_argument("check_incomplete_gamma: empty grid");
  if (!(nu > 0.0))
    throw std::invalid_argument("check_incomplete_gamma: nu must be positive");
  double best = 0.0;
  for (double rho : rho_grid) {
    if (!(rho > 0.0))
      throw std::invalid_argument("check_incomplete_gamma: rho must be positive");
    const double integral = stretched_tail_integral(mu, nu, rho);
    const double envelope =
        std::exp(-std::pow(rho, nu)) * (1.0 + std::pow(rho, mu - nu + 1.0));
    if (!(envelope > 0.0) || !std::isfinite(integral))
      throw std::runtime_error("check_incomplete_gamma: quadrature failed");
    best = std::max(best, integral / envelope);
  }
  return best;
}

double check_sum_vs_integral(const Lattice& lattice,
                             const std::function<double(double)>& decay,
                             double R) {
  const double d = static_cast<double>(lattice.dim());
  double max_sum = 0.0;
  for (std::size_t x = 0; x < lattice.size(); ++x) {
    double sum = 0.0;
    for (std::size_t z = 0; z < lattice.size(); ++z) {
      const double dist = lattice.distance(static_cast<int>(x),
                                           static_cast<int>(z));
      if (dist >= 1.0 - 1e-12 && dist <= R) sum += decay(dist);
    }
    max_sum = std::max(max_sum, sum);
  }
  if (max_sum == 0.0) return 0.0;

  const double integral = integrate(
      [&](double r) { return decay(r) * std::pow(r, d - 1.0); }, 0.5, R,
      1e-12);
  if (!(integral > 0.0))
    throw std::runtime_error(
        "check_sum_vs_integral: zero integral against a positive sum");
  return max_sum / integral;
}

}  // namespace lrb
