#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lrb/lattice.hpp"

namespace lrb {

// One multi-body term: a Pauli string over its support with a real
// coefficient. ops[i] in {X, Y, Z} acts on support[i]; identity elsewhere.
struct PauliTerm {
  std::vector<int> support;
  std::string ops;
  double coeff = 0.0;

  double norm() const { return std::abs(coeff); }  // Pauli strings are unitary
};

struct HamiltonianSpec {
  Lattice lattice;
  std::vector<PauliTerm> terms;

  std::size_t sites() const { return lattice.size(); }
  void validate() const;  // support bounds, op strings, Hilbert cap 2^14
  double term_diameter(const PauliTerm& term) const;
};

// Unit-norm observable: a Pauli string on its support.
struct ObservableSpec {
  std::vector<int> support;
  std::string ops;
};

// Pairwise sigma^z sigma^z couplings J / r^{d+alpha} plus a transverse field
// of the given strength on every site (0 disables the short-range part).
// dim = 1 builds a chain of `length` sites, dim = 2 a length x length patch.
HamiltonianSpec build_power_law_ising(int length, double alpha, int dim,
                                      double coupling,
                                      double transverse_field);

// f(R): sup over sites of the summed norms of terms with diameter >= R
// containing that site.
double decay_profile(const HamiltonianSpec& h, double R);

// C0 = sup_x sum_y sum_{Z containing x and y} ||H_Z||.
double interaction_budget(const HamiltonianSpec& h);

// Minimal J with f(R) <= J R^{-alpha} over R in {1, ..., diameter}.
double fit_decay(const HamiltonianSpec& h, double alpha);

// sup over sites of the summed norms of the term-wise difference.
double delta_j(const HamiltonianSpec& h1, const HamiltonianSpec& h2);

nlohmann::json hamiltonian_to_json(const HamiltonianSpec& h);
HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j);

}  // namespace lrb
