#include "lrb/bound.hpp"

#include <cmath>
#include <stdexcept>

namespace lrb {

double eval_bound(const BoundDescriptor& bound, double r, double t) {
  if (r < 0.0 || t < 0.0)
    throw std::invalid_argument("eval_bound: r and t must be nonnegative");
  if (r < 1.0) return 2.0;

  const double tau = bound.params.velocity() * t;
  const int x = bound.params.x_size;

  double exponent;
  if (bound.seed_exponential) {
    exponent = std::isinf(bound.cutoff) ? tau : tau - r / bound.cutoff;
  } else {
    exponent = tau - std::pow(r, 1.0 - bound.sigma_exp);
  }
  double raw = bound.exp_prefactor.eval(tau, x) * std::exp(exponent);

  for (const auto& term : bound.poly_terms) {
    // Gate open at exact equality cutoff = r^sigma.
    if (term.cutoff_power && !std::isinf(bound.cutoff) &&
        bound.cutoff < std::pow(r, *term.cutoff_power))
      continue;
    raw += term.prefactor.eval(tau, x) * std::pow(r, term.r_exponent);
  }
  return raw > 2.0 ? 2.0 : raw;
}

LeadingBehavior leading_behavior(const BoundDescriptor& bound) {
  if (bound.poly_terms.empty())
    throw std::logic_error("leading_behavior: bound has no power-law terms");
  LeadingBehavior lb{-std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()};
  for (const auto& term : bound.poly_terms) {
    lb.spatial_exponent = std::max(lb.spatial_exponent, term.r_exponent);
    lb.temporal_exponent =
        std::max(lb.temporal_exponent, term.prefactor.max_tau_power());
  }
  return lb;
}

namespace {

nlohmann::json poly_to_json(const TauPolynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : p.terms())
    arr.push_back({{"coeff", m.coeff},
                   {"tau_power", m.tau_power},
                   {"x_power", m.x_power}});
  return arr;
}

TauPolynomial poly_from_json(const nlohmann::json& arr) {
  TauPolynomial p;
  for (const auto& m : arr)
    p.add_term(m.at("coeff").get<double>(), m.at("tau_power").get<double>(),
               m.at("x_power").get<int>());
  return p;
}

}  // namespace

nlohmann::json bound_to_json(const BoundDescriptor& b) {
  nlohmann::json constants = nlohmann::json::object();
  for (const auto& [name, value] : b.params.constants.entries())
    constants[name] = value;

  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : b.poly_terms) {
    nlohmann::json jt = {{"r_exponent", t.r_exponent},
                         {"prefactor", poly_to_json(t.prefactor)}};
    if (t.cutoff_power)
      jt["cutoff_power"] = *t.cutoff_power;
    else
      jt["cutoff_power"] = nullptr;
    terms.push_back(jt);
  }

  return {{"params",
           {{"alpha", b.params.alpha},
            {"dim", b.params.dim},
            {"j_const", b.params.j_const},
            {"c0", b.params.c0},
            {"velocity", b.params.velocity()},
            {"x_size", b.params.x_size},
            {"constants", constants}}},
          {"sigma_exp", b.sigma_exp},
          {"seed_exponential", b.seed_exponential},
          {"exp_prefactor", poly_to_json(b.exp_prefactor)},
          {"poly_terms", terms},
          {"cutoff", std::isinf(b.cutoff) ? nlohmann::json(nullptr)
                                          : nlohmann::json(b.cutoff)},
          {"iteration_count", b.iteration_count}};
}

BoundDescriptor bound_from_json(const nlohmann::json& j) {
  BoundDescriptor b;
  const auto& p = j.at("params");
  b.params.alpha = p.at("alpha").get<double>();
  b.params.dim = p.at("dim").get<int>();
  b.params.j_const = p.at("j_const").get<double>();
  b.params.c0 = p.at("c0").get<double>();
  b.params.x_size = p.at("x_size").get<int>();
  for (const auto& [name, value] : p.at("constants").items())
    b.params.constants.set(name, value.get<double>());
  b.params.validate();

  b.sigma_exp = j.at("sigma_exp").get<double>();
  b.seed_exponential = j.at("seed_exponential").get<bool>();
  b.exp_prefactor = poly_from_json(j.at("exp_prefactor"));
  for (const auto& jt : j.at("poly_terms")) {
    PowerLawTerm t;
    t.r_exponent = jt.at("r_exponent").get<double>();
    t.prefactor = poly_from_json(jt.at("prefactor"));
    if (!jt.at("cutoff_power").is_null())
      t.cutoff_power = jt.at("cutoff_power").get<double>();
    b.poly_terms.push_back(std::move(t));
  }
  b.cutoff = j.at("cutoff").is_null()
                 ? std::numeric_limits<double>::infinity()
                 : j.at("cutoff").get<double>();
  b.iteration_count = j.at("iteration_count").get<int>();
  return b;
}

}  // namespace lrb
