#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lrb/model_params.hpp"
#include "lrb/tau_polynomial.hpp"

namespace lrb {

// One power-law contribution F(vt) r^{mu}, optionally gated by
// Theta(cutoff - r^{cutoff_power}).
struct PowerLawTerm {
  double r_exponent = 0.0;  // mu, < 0 for every term the iteration produces
  TauPolynomial prefactor;
  std::optional<double> cutoff_power;
};

// A bound function lambda(r, t): stretched exponential plus gated power-law
// terms, always evaluated through the trivial-bound clamp. The seed bound
// uses a linear exponent vt - r/cutoff instead of vt - r^{1-sigma}.
struct BoundDescriptor {
  ModelParams params;
  double sigma_exp = 0.5;        // 0 < sigma < 1 once iterated
  bool seed_exponential = false;
  TauPolynomial exp_prefactor;   // the 2|X| factor
  std::vector<PowerLawTerm> poly_terms;
  double cutoff = std::numeric_limits<double>::infinity();
  int iteration_count = 0;
};

// Clamped pointwise evaluation: 2 whenever r < 1 or the raw value exceeds 2.
double eval_bound(const BoundDescriptor& bound, double r, double t);

struct LeadingBehavior {
  double spatial_exponent;   // max mu over poly terms (dominates at large r)
  double temporal_exponent;  // largest tau power across poly prefactors
};
LeadingBehavior leading_behavior(const BoundDescriptor& bound);

nlohmann::json bound_to_json(const BoundDescriptor& bound);
BoundDescriptor bound_from_json(const nlohmann::json& j);

}  // namespace lrb
