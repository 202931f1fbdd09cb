#include "lrb/iteration.hpp"

#include <cmath>
#include <stdexcept>

namespace lrb {

namespace {
constexpr double kDegenerateEps = 1e-12;
}

SigmaSchedule::SigmaSchedule(std::vector<double> sigmas)
    : sigmas_(std::move(sigmas)) {
  if (sigmas_.empty())
    throw std::invalid_argument("SigmaSchedule: empty schedule");
  double prev = 1.0;
  for (double s : sigmas_) {
    if (!(s > 0.0 && s < 1.0))
      throw std::invalid_argument("SigmaSchedule: sigma must lie in (0,1)");
    if (s > prev)
      throw std::invalid_argument("SigmaSchedule: sigmas must be non-increasing");
    prev = s;
  }
}

SigmaSchedule SigmaSchedule::uniform(double sigma, int length) {
  if (length < 1)
    throw std::invalid_argument("SigmaSchedule: length must be >= 1");
  return SigmaSchedule(std::vector<double>(static_cast<std::size_t>(length),
                                           sigma));
}

bool SigmaSchedule::is_uniform() const {
  for (double s : sigmas_)
    if (s != sigmas_.front()) return false;
  return true;
}

BoundDescriptor initial_bound(const ModelParams& params, double cutoff) {
  params.validate();
  if (!(cutoff > 0.0))
    throw std::invalid_argument("initial_bound: cutoff must be positive");
  BoundDescriptor b;
  b.params = params;
  b.seed_exponential = true;
  b.sigma_exp = 0.0;  // unused while the seed flag is set
  b.exp_prefactor = TauPolynomial::monomial(2.0, 0.0, 1);
  b.cutoff = cutoff;
  b.iteration_count = 0;
  return b;
}

int n_star(double sigma, const ModelParams& params) {
  const double d = static_cast<double>(params.dim);
  const double gap = sigma * params.alpha - d;
  if (!(gap > 0.0))
    throw std::invalid_argument("n_star: requires sigma * alpha > dim");
  const double val = sigma * d / gap;
  const double rounded = std::round(val);
  if (std::abs(val - rounded) < 1e-9) return static_cast<int>(rounded);
  return static_cast<int>(std::ceil(val));
}

namespace {

// Pieces of I[lambda^{(R')}] with the F1 lineage kept separate so the next
// iteration can track both spatial exponents.
struct IntegralParts {
  TauPolynomial budget;          // C|X|(1 + ...) from the clamp + exp tail
  TauPolynomial f2_independent;  // F2(vt) (vt)^{(d+mu2)/(1-sigma)}
  TauPolynomial f1_independent;  // F1 lineage once d + mu1 < 0
  std::optional<IntegralBound::RPrimePiece> f1_rprime;
};

IntegralParts decompose_integral(const BoundDescriptor& bound) {
  const ModelParams& p = bound.params;
  const double c = p.constants.get("c");
  const double d = static_cast<double>(p.dim);
  IntegralParts parts;

  if (bound.seed_exponential) {
    // I[lambda_0^{(R')}] <= C|X| (1 + (R' vt)^d)
    parts.budget = TauPolynomial::monomial(c, 0.0, 1);
    parts.f1_rprime = IntegralBound::RPrimePiece{
        TauPolynomial::monomial(c, d, 1), d};
    return parts;
  }

  const double sigma = bound.sigma_exp;
  parts.budget = TauPolynomial::monomial(c, 0.0, 1);
  parts.budget.add_term(c, d / (1.0 - sigma), 1);

  if (bound.poly_terms.empty()) return parts;
  if (bound.poly_terms.size() > 2)
    throw std::logic_error("information_integral: more than two power-law terms");

  // Term order convention: index 0 carries the F1 lineage, the last index
  // carries F2 (the -sigma*alpha term).
  for (std::size_t i = 0; i < bound.poly_terms.size(); ++i) {
    const auto& term = bound.poly_terms[i];
    const double shifted = d + term.r_exponent;
    if (std::abs(shifted) < kDegenerateEps)
      throw DegenerateExponentError(
          "information_integral: d + mu = 0 (logarithmic case)");
    const bool is_f1 = bound.poly_terms.size() == 2 && i == 0;
    if (shifted > 0.0) {
      if (!is_f1)
        throw std::logic_error(
            "information_integral: d + mu2 must be negative");
      parts.f1_rprime = IntegralBound::RPrimePiece{
          term.prefactor.scaled(c, 0.0, 0), shifted / sigma};
    } else {
      TauPolynomial piece =
          term.prefactor.scaled(c, shifted / (1.0 - sigma), 0);
      if (is_f1)
        parts.f1_independent += piece;
      else
        parts.f2_independent += piece;
    }
  }
  return parts;
}

}  // namespace

IntegralBound information_integral(const BoundDescriptor& bound) {
  IntegralParts parts = decompose_integral(bound);
  IntegralBound out;
  out.rprime_independent = parts.budget;
  out.rprime_independent += parts.f2_independent;
  out.rprime_independent += parts.f1_independent;
  out.rprime_term = parts.f1_rprime;
  return out;
}

BoundDescriptor iterate_step(const BoundDescriptor& bound, double sigma_next) {
  const ModelParams& p = bound.params;
  const double d = static_cast<double>(p.dim);
  if (!(sigma_next > 0.0 && sigma_next < 1.0))
    throw std::invalid_argument("iterate_step: sigma must lie in (0,1)");
  if (!bound.seed_exponential && sigma_next > bound.sigma_exp + 1e-15)
    throw std::invalid_argument("iterate_step: sigma must not increase");
  if (!(sigma_next * p.alpha > d))
    throw std::invalid_argument("iterate_step: requires sigma * alpha > dim");

  IntegralParts parts = decompose_integral(bound);

  // C |X| t f(r^{sigma'}) = (C J / v) |X| tau r^{-sigma' alpha}
  const double step_coeff = p.constants.get("c") * p.j_const / p.velocity();

  BoundDescriptor next;
  next.params = p;
  next.seed_exponential = false;
  next.sigma_exp = sigma_next;
  next.exp_prefactor = TauPolynomial::monomial(2.0, 0.0, 1);
  next.cutoff = bound.cutoff;
  next.iteration_count = bound.iteration_count + 1;

  const double mu2 = -sigma_next * p.alpha;

  PowerLawTerm f1_term;
  bool have_f1 = false;
  if (parts.f1_rprime) {
    f1_term.r_exponent =
        sigma_next * (-p.alpha + parts.f1_rprime->rprime_exponent);
    f1_term.prefactor =
        parts.f1_rprime->prefactor.scaled(step_coeff, 1.0, 1);
    have_f1 = true;
  } else if (!parts.f1_independent.empty()) {
    f1_term.r_exponent = mu2;
    f1_term.prefactor = parts.f1_independent.scaled(step_coeff, 1.0, 1);
    have_f1 = true;
  }

  PowerLawTerm f2_term;
  f2_term.r_exponent = mu2;
  f2_term.prefactor = parts.budget;
  f2_term.prefactor += parts.f2_independent;
  f2_term.prefactor = f2_term.prefactor.scaled(step_coeff, 1.0, 1);

  if (have_f1) {
    f1_term.cutoff_power = sigma_next;
    next.poly_terms.push_back(std::move(f1_term));
  }
  f2_term.cutoff_power = sigma_next;
  next.poly_terms.push_back(std::move(f2_term));
  return next;
}

double mu1_closed(const SigmaSchedule& schedule, int n,
                  const ModelParams& params) {
  if (n < 1 || static_cast<std::size_t>(n) > schedule.size())
    throw std::invalid_argument("mu1_closed: n out of schedule range");
  const auto& s = schedule.values();
  double inv_sum = 1.0;
  for (int j = 0; j + 1 < n; ++j)
    inv_sum += 1.0 / s[static_cast<std::size_t>(j)];
  const double sigma_n = s[static_cast<std::size_t>(n - 1)];
  return inv_sum * sigma_n * static_cast<double>(params.dim) -
         n * sigma_n * params.alpha;
}

BoundDescriptor derive_bound(const ModelParams& params,
                             const SigmaSchedule& schedule) {
  BoundDescriptor b =
      initial_bound(params, std::numeric_limits<double>::infinity());
  for (double sigma : schedule.values()) b = iterate_step(b, sigma);
  // R -> infinity: the Theta gates drop.
  b.cutoff = std::numeric_limits<double>::infinity();
  for (auto& term : b.poly_terms) term.cutoff_power.reset();
  return b;
}

}  // namespace lrb
