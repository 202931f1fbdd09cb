#include "lrb/dynamics.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "lrb/io.hpp"

namespace lrb {

namespace {
using Complex = std::complex<double>;
constexpr std::size_t kDenseNormCap = 1024;
}  // namespace

Eigen::MatrixXcd pauli_string_matrix(std::size_t n_sites,
                                     const std::vector<int>& support,
                                     const std::string& ops, double coeff) {
  if (support.size() != ops.size())
    throw std::invalid_argument("pauli_string_matrix: support/ops mismatch");
  const std::size_t dim = std::size_t{1} << n_sites;
  std::size_t flip_mask = 0;
  std::vector<std::pair<std::size_t, char>> phase_ops;  // bit mask, op
  for (std::size_t i = 0; i < support.size(); ++i) {
    const std::size_t bit = std::size_t{1} << support[i];
    if (ops[i] == 'X' || ops[i] == 'Y') flip_mask ^= bit;
    if (ops[i] == 'Y' || ops[i] == 'Z') phase_ops.emplace_back(bit, ops[i]);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    Complex amp(coeff, 0.0);
    for (const auto& [bit, op] : phase_ops) {
      const bool set = (col & bit) != 0;
      if (op == 'Z') amp *= set ? -1.0 : 1.0;
      else amp *= set ? Complex(0.0, -1.0) : Complex(0.0, 1.0);  // sigma^y
    }
    m(static_cast<Eigen::Index>(col ^ flip_mask),
      static_cast<Eigen::Index>(col)) += amp;
  }
  return m;
}

Eigen::MatrixXcd hamiltonian_matrix(const HamiltonianSpec& h) {
  h.validate();
  const std::size_t dim = std::size_t{1} << h.sites();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms)
    m += pauli_string_matrix(h.sites(), t.support, t.ops, t.coeff);
  return m;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  if (static_cast<std::size_t>(m.rows()) <= kDenseNormCap) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("spectral_norm: eigensolver failed");
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
  }
  // Power iteration on the Gram matrix, deterministic start.
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(m.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = Complex(gauss(rng), gauss(rng));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXcd w = gram * v;
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    w /= next;
    if (std::abs(next - lambda) <= 1e-10 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(lambda);
}

Evolver::Evolver(const HamiltonianSpec& h) : n_sites_(h.sites()) {
  const Eigen::MatrixXcd hm = hamiltonian_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hm);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Evolver: spectral decomposition failed");
  energies_ = solver.eigenvalues();
  basis_ = solver.eigenvectors();
}

Eigen::MatrixXcd Evolver::evolve(const Eigen::MatrixXcd& op, double t) const {
  // tau_t(O) = U e^{i Lambda t} (U^dag O U) e^{-i Lambda t} U^dag
  Eigen::MatrixXcd in_basis = basis_.adjoint() * op * basis_;
  const Eigen::Index n = in_basis.rows();
  Eigen::VectorXcd phases(n);
  for (Eigen::Index i = 0; i < n; ++i)
    phases(i) = std::exp(Complex(0.0, energies_(i) * t));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      in_basis(i, j) *= phases(i) * std::conj(phases(j));
  return basis_ * in_basis * basis_.adjoint();
}

Eigen::MatrixXcd Evolver::observable_matrix(const ObservableSpec& o) const {
  return pauli_string_matrix(n_sites_, o.support, o.ops, 1.0);
}

Eigen::MatrixXcd Evolver::evolve(const ObservableSpec& o, double t) const {
  return evolve(observable_matrix(o), t);
}

Eigen::MatrixXcd heisenberg_evolve(const HamiltonianSpec& h,
                                   const ObservableSpec& a, double t) {
  return Evolver(h).evolve(a, t);
}

double commutator_norm(const HamiltonianSpec& h, const ObservableSpec& a,
                       const ObservableSpec& b, double t) {
  Evolver ev(h);
  const Eigen::MatrixXcd at = ev.evolve(a, t);
  const Eigen::MatrixXcd bm = ev.observable_matrix(b);
  return spectral_norm(at * bm - bm * at);
}

double perturbation_diff(const HamiltonianSpec& h1, const HamiltonianSpec& h2,
                         const ObservableSpec& o, double t) {
  if (!(h1.lattice == h2.lattice))
    throw std::invalid_argument("perturbation_diff: lattices differ");
  Evolver e1(h1), e2(h2);
  return spectral_norm(e1.evolve(o, t) - e2.evolve(o, t));
}

FrontTable front_scan(const HamiltonianSpec& h, const ObservableSpec& a,
                      const std::vector<int>& probe_sites,
                      const std::vector<double>& times) {
  Evolver ev(h);
  const Eigen::MatrixXcd am = ev.observable_matrix(a);

  FrontTable table;
  table.meta.sites = static_cast<int>(h.sites());

  std::vector<Eigen::MatrixXcd> probes;
  std::vector<double> dists;
  for (int z : probe_sites) {
    probes.push_back(pauli_string_matrix(h.sites(), {z}, "X", 1.0));
    dists.push_back(
        h.lattice.set_distance(a.support, std::vector<int>{z}));
  }
  for (double t : times) {
    const Eigen::MatrixXcd at = ev.evolve(am, t);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const double value =
          spectral_norm(at * probes[i] - probes[i] * at);
      table.rows.push_back({dists[i], t, value});
    }
  }
  return table;
}

std::string front_to_csv(const FrontTable& front) {
  std::string out = "r,t,value\n";
  for (const auto& row : front.rows)
    out += format_sig17(row.r) + "," + format_sig17(row.t) + "," +
           format_sig17(row.value) + "\n";
  return out;
}

nlohmann::json front_meta_to_json(const FrontTable& front) {
  return {{"sites", front.meta.sites},
          {"alpha", front.meta.alpha},
          {"model", front.meta.model},
          {"seed", front.meta.seed}};
}

DominanceReport dominance_report(const FrontTable& front,
                                 const BoundDescriptor& bound) {
  if (front.rows.empty())
    throw std::invalid_argument("dominance_report: empty front table");
  DominanceReport report{0.0, 0.0, 0.0};
  for (const auto& row : front.rows) {
    if (row.r < 1.0) continue;
    const double b = eval_bound(bound, row.r, row.t);
    const double ratio = row.value == 0.0 ? 0.0 : row.value / b;
    if (ratio > report.kappa) {
      report.kappa = ratio;
      report.peak_r = row.r;
      report.peak_t = row.t;
    }
  }
  return report;
}

}  // namespace lrb
