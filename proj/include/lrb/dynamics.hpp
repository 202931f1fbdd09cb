#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "lrb/bound.hpp"
#include "lrb/hamiltonian.hpp"

namespace lrb {

// Dense matrix of a Pauli string on an n-site register (site k maps to bit k).
Eigen::MatrixXcd pauli_string_matrix(std::size_t n_sites,
                                     const std::vector<int>& support,
                                     const std::string& ops, double coeff);

Eigen::MatrixXcd hamiltonian_matrix(const HamiltonianSpec& h);

// Largest singular value. Full decomposition up to dim 2^10, power iteration
// (tol 1e-10, <= 1e4 iterations) above.
double spectral_norm(const Eigen::MatrixXcd& m);

// Exact Heisenberg evolution; the spectral decomposition of H is computed
// once and reused across times and observables.
class Evolver {
 public:
  explicit Evolver(const HamiltonianSpec& h);

  Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& op, double t) const;
  Eigen::MatrixXcd observable_matrix(const ObservableSpec& o) const;
  Eigen::MatrixXcd evolve(const ObservableSpec& o, double t) const;
  std::size_t dimension() const { return static_cast<std::size_t>(basis_.rows()); }

 private:
  std::size_t n_sites_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd basis_;
};

Eigen::MatrixXcd heisenberg_evolve(const HamiltonianSpec& h,
                                   const ObservableSpec& a, double t);

// || [tau_t(A), B] ||
double commutator_norm(const HamiltonianSpec& h, const ObservableSpec& a,
                       const ObservableSpec& b, double t);

// || tau_t^{H1}(O) - tau_t^{H2}(O) ||
double perturbation_diff(const HamiltonianSpec& h1, const HamiltonianSpec& h2,
                         const ObservableSpec& o, double t);

struct FrontRow {
  double r;
  double t;
  double value;
};

struct FrontTable {
  std::vector<FrontRow> rows;
  struct Meta {
    int sites = 0;
    double alpha = 0.0;
    std::string model;
    unsigned seed = 0;
  } meta;
};

// Commutator norms of [tau_t(A), sigma^x_z] over the (probe, time) grid.
FrontTable front_scan(const HamiltonianSpec& h, const ObservableSpec& a,
                      const std::vector<int>& probe_sites,
                      const std::vector<double>& times);

std::string front_to_csv(const FrontTable& front);
nlohmann::json front_meta_to_json(const FrontTable& front);

struct DominanceReport {
  double kappa;   // smallest multiplier making the bound majorize the front
  double peak_r;
  double peak_t;
};

DominanceReport dominance_report(const FrontTable& front,
                                 const BoundDescriptor& bound);

}  // namespace lrb
