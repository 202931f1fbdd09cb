#include "lrb/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lrb {

namespace {
constexpr int kMaxSites = 14;

void validate_term(const PauliTerm& t, std::size_t n_sites) {
  if (t.support.size() != t.ops.size())
    throw std::invalid_argument("PauliTerm: support/ops size mismatch");
  if (t.support.empty())
    throw std::invalid_argument("PauliTerm: empty support");
  for (char c : t.ops)
    if (c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument("PauliTerm: ops must be over {X,Y,Z}");
  std::vector<int> sorted = t.support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("PauliTerm: repeated site in support");
  for (int s : t.support)
    if (s < 0 || static_cast<std::size_t>(s) >= n_sites)
      throw std::invalid_argument("PauliTerm: support outside lattice");
}

// Canonical key so terms on the same support with the same operator content
// align between Hamiltonians.
std::string term_key(const PauliTerm& t) {
  std::vector<std::pair<int, char>> entries;
  for (std::size_t i = 0; i < t.support.size(); ++i)
    entries.emplace_back(t.support[i], t.ops[i]);
  std::sort(entries.begin(), entries.end());
  std::string key;
  for (auto& [site, op] : entries)
    key += std::to_string(site) + op + ';';
  return key;
}

}  // namespace

void HamiltonianSpec::validate() const {
  if (lattice.size() > kMaxSites)
    throw std::invalid_argument("HamiltonianSpec: Hilbert dimension exceeds 2^14");
  for (const auto& t : terms) validate_term(t, lattice.size());
}

double HamiltonianSpec::term_diameter(const PauliTerm& term) const {
  double best = 0.0;
  for (std::size_t i = 0; i < term.support.size(); ++i)
    for (std::size_t j = i + 1; j < term.support.size(); ++j)
      best = std::max(best, lattice.distance(term.support[i],
                                             term.support[j]));
  return best;
}

HamiltonianSpec build_power_law_ising(int length, double alpha, int dim,
                                      double coupling,
                                      double transverse_field) {
  if (length < 2)
    throw std::invalid_argument("build_power_law_ising: length must be >= 2");
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("build_power_law_ising: dim must be 1 or 2");
  Lattice lat = dim == 1 ? Lattice::chain(length)
                         : Lattice::square(length, length);
  if (lat.size() > kMaxSites)
    throw std::invalid_argument(
        "build_power_law_ising: Hilbert dimension exceeds 2^14");

  HamiltonianSpec h{std::move(lat), {}};
  const int n = static_cast<int>(h.sites());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double r = h.lattice.distance(i, j);
      h.terms.push_back(
          {{i, j}, "ZZ", coupling / std::pow(r, static_cast<double>(dim) + alpha)});
    }
  if (transverse_field != 0.0)
    for (int i = 0; i < n; ++i)
      h.terms.push_back({{i}, "X", transverse_field});
  h.validate();
  return h;
}

double decay_profile(const HamiltonianSpec& h, double R) {
  if (R < 0.0) throw std::invalid_argument("decay_profile: R must be >= 0");
  double best = 0.0;
  for (std::size_t z = 0; z < h.sites(); ++z) {
    double sum = 0.0;
    for (const auto& t : h.terms) {
      if (std::find(t.support.begin(), t.support.end(),
                    static_cast<int>(z)) == t.support.end())
        continue;
      if (h.term_diameter(t) >= R) sum += t.norm();
    }
    best = std::max(best, sum);
  }
  return best;
}

double interaction_budget(const HamiltonianSpec& h) {
  double best = 0.0;
  for (std::size_t x = 0; x < h.sites(); ++x) {
    double sum = 0.0;
    for (std::size_t y = 0; y < h.sites(); ++y)
      for (const auto& t : h.terms) {
        const bool has_x = std::find(t.support.begin(), t.support.end(),
                                     static_cast<int>(x)) != t.support.end();
        const bool has_y = std::find(t.support.begin(), t.support.end(),
                                     static_cast<int>(y)) != t.support.end();
        if (has_x && has_y) sum += t.norm();
      }
    best = std::max(best, sum);
  }
  return best;
}

double fit_decay(const HamiltonianSpec& h, double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("fit_decay: alpha must be positive");
  const int diam = static_cast<int>(std::floor(h.lattice.diameter()));
  double j_fit = 0.0;
  for (int R = 1; R <= std::max(1, diam); ++R)
    j_fit = std::max(j_fit, decay_profile(h, static_cast<double>(R)) *
                                std::pow(static_cast<double>(R), alpha));
  return j_fit;
}

double delta_j(const HamiltonianSpec& h1, const HamiltonianSpec& h2) {
  if (!(h1.lattice == h2.lattice))
    throw std::invalid_argument("delta_j: Hamiltonians live on different lattices");
  std::map<std::string, std::pair<double, const PauliTerm*>> diff;
  for (const auto& t : h1.terms) {
    auto& entry = diff[term_key(t)];
    entry.first += t.coeff;
    entry.second = &t;
  }
  for (const auto& t : h2.terms) {
    auto& entry = diff[term_key(t)];
    entry.first -= t.coeff;
    entry.second = &t;
  }
  double best = 0.0;
  for (std::size_t x = 0; x < h1.sites(); ++x) {
    double sum = 0.0;
    for (const auto& [key, entry] : diff) {
      const PauliTerm* t = entry.second;
      if (std::find(t->support.begin(), t->support.end(),
                    static_cast<int>(x)) != t->support.end())
        sum += std::abs(entry.first);
    }
    best = std::max(best, sum);
  }
  return best;
}

nlohmann::json hamiltonian_to_json(const HamiltonianSpec& h) {
  nlohmann::json sites = nlohmann::json::array();
  for (const auto& p : h.lattice.positions())
    sites.push_back({p[0], p[1]});
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : h.terms)
    terms.push_back({{"support", t.support}, {"ops", t.ops},
                     {"coeff", t.coeff}});
  return {{"dim", h.lattice.dim()}, {"sites", sites}, {"terms", terms}};
}

HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j) {
  std::vector<std::array<double, 2>> pos;
  for (const auto& p : j.at("sites"))
    pos.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  Lattice lat(j.at("dim").get<int>(), std::move(pos));
  HamiltonianSpec h{std::move(lat), {}};
  for (const auto& jt : j.at("terms"))
    h.terms.push_back({jt.at("support").get<std::vector<int>>(),
                       jt.at("ops").get<std::string>(),
                       jt.at("coeff").get<double>()});
  h.validate();
  return h;
}

}  // namespace lrb
