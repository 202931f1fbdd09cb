#pragma once

#include <optional>
#include <vector>

#include "lrb/bound.hpp"

namespace lrb {

// Non-increasing cutoff exponents sigma_1 >= sigma_2 >= ... in (0, 1).
class SigmaSchedule {
 public:
  explicit SigmaSchedule(std::vector<double> sigmas);
  static SigmaSchedule uniform(double sigma, int length);

  const std::vector<double>& values() const { return sigmas_; }
  std::size_t size() const { return sigmas_.size(); }
  bool is_uniform() const;

 private:
  std::vector<double> sigmas_;
};

// Symbolic information-spread integral I[lambda^{(R')}]: a piece independent
// of the inner cutoff R' plus an optional (R')^{e} piece with e > 0.
struct IntegralBound {
  TauPolynomial rprime_independent;
  struct RPrimePiece {
    TauPolynomial prefactor;
    double rprime_exponent;  // > 0
  };
  std::optional<RPrimePiece> rprime_term;
};

// Thrown when a power-law term hits d + mu = 0 exactly (logarithmic case);
// callers nudge sigma by 1e-9 and retry.
struct DegenerateExponentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Seed bound lambda_0 = clamp(2|X| e^{vt - r/R}).
BoundDescriptor initial_bound(const ModelParams& params, double cutoff);

// ceil(sigma d / (sigma alpha - d)); errors when sigma alpha <= d.
int n_star(double sigma, const ModelParams& params);

IntegralBound information_integral(const BoundDescriptor& bound);

// One application of the recursion with R' = r^{sigma_next}.
BoundDescriptor iterate_step(const BoundDescriptor& bound, double sigma_next);

// Closed form mu_1^{(n)} = (1 + sum_{j<n} 1/sigma_j) sigma_n d
//                          - n sigma_n alpha.
double mu1_closed(const SigmaSchedule& schedule, int n,
                  const ModelParams& params);

// Seed, fold the schedule, then take the cutoff to infinity (gates drop).
BoundDescriptor derive_bound(const ModelParams& params,
                             const SigmaSchedule& schedule);

}  // namespace lrb
