#include "lrb/lightcone.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lrb/io.hpp"
#include "lrb/iteration.hpp"

namespace lrb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_alpha_gt_dim(double alpha, int dim, const char* where) {
  if (!(alpha > static_cast<double>(dim)))
    throw std::invalid_argument(std::string(where) + ": requires alpha > dim");
}
}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::this_work: return "this_work";
    case Method::foss_feig: return "foss_feig";
    case Method::matsuta: return "matsuta";
  }
  throw std::logic_error("method_name: bad enum");
}

ExponentResult lc1_exponent(const LightconeQuery& q) {
  require_alpha_gt_dim(q.alpha, q.dim, "lc1_exponent");
  const double d = static_cast<double>(q.dim);
  ExponentResult res;
  res.value = (q.alpha + 1.0) / (q.alpha - d);
  res.branch = "closed-form";
  if (q.method == Method::this_work)
    res.optimizer_sigma = (d + 1.0) / (q.alpha + 1.0);
  return res;
}

double alpha_m(int dim) {
  if (dim < 1) throw std::invalid_argument("alpha_m: dim must be >= 1");
  const double d = static_cast<double>(dim);
  return 1.5 * d * (1.0 + std::sqrt(1.0 + 8.0 / (9.0 * d)));
}

double beta_tilde(double alpha, int dim) {
  require_alpha_gt_dim(alpha, dim, "beta_tilde");
  const double d = static_cast<double>(dim);
  const double root = std::sqrt(1.0 + 2.0 / d - 2.0 / alpha);
  return 2.0 / ((alpha - d) * (alpha - d)) *
         (alpha - d + d * alpha * (1.0 + root));
}

SigmaOptima sigma_optima(double alpha, int dim) {
  require_alpha_gt_dim(alpha, dim, "sigma_optima");
  const double d = static_cast<double>(dim);
  return {(d + 1.0) / (alpha + 1.0), (2.0 * d + 2.0) / (alpha + 2.0),
          1.0 + 0.5 * d - 0.5 * d * std::sqrt(1.0 + 2.0 / d - 2.0 / alpha)};
}

ExponentResult lc2_exponent(const LightconeQuery& q) {
  require_alpha_gt_dim(q.alpha, q.dim, "lc2_exponent");
  const double d = static_cast<double>(q.dim);
  ExponentResult res;
  res.branch = "closed-form";
  switch (q.method) {
    case Method::foss_feig:
      res.value = (q.alpha + d) / q.alpha * (q.alpha + 1.0) / (q.alpha - d) +
                  1.0 / q.alpha;
      return res;
    case Method::matsuta:
      if (q.alpha <= 2.0 * d) return res;  // no finite power-law LC2
      res.value = (q.alpha + 2.0) / (q.alpha - 2.0 * d);
      return res;
    case Method::this_work: {
      const double am = alpha_m(q.dim);
      if (q.alpha < am) {
        res.value = beta_tilde(q.alpha, q.dim);
        res.branch = "poly-minimum";
        res.optimizer_sigma = sigma_optima(q.alpha, q.dim).lc2_min;
      } else {
        res.value = (q.alpha + 2.0) / (q.alpha - 2.0 * d);
        res.branch = "exp-poly-intersection";
        res.optimizer_sigma = sigma_optima(q.alpha, q.dim).lc2_exp;
      }
      return res;
    }
  }
  throw std::logic_error("lc2_exponent: bad enum");
}

namespace {

// Critical exponent along r = t^gamma for the bound reached after n uniform
// iterations at the given sigma. Infinite when some term admits no power-law
// cone. Retries with a nudged sigma when the iteration hits d + mu = 0.
double cone_requirement(const ModelParams& params, double sigma, int n,
                        Cone which) {
  const double d = static_cast<double>(params.dim);
  BoundDescriptor b;
  try {
    b = derive_bound(params, SigmaSchedule::uniform(sigma, n));
  } catch (const DegenerateExponentError&) {
    b = derive_bound(params, SigmaSchedule::uniform(sigma + 1e-9, n));
  }
  double req = 1.0 / (1.0 - b.sigma_exp);  // exponential term
  for (const auto& term : b.poly_terms) {
    const double g = term.prefactor.max_tau_power();
    const double mu = term.r_exponent;
    if (which == Cone::lc1) {
      if (!(mu < 0.0)) return kInf;
      req = std::max(req, g / -mu);
    } else {
      if (!(mu + d < 0.0)) return kInf;
      req = std::max(req, (1.0 + g) / (-mu - d));
    }
  }
  return req;
}

struct SigmaObjective {
  const ModelParams& params;
  Cone which;
  int n_max;

  // Best exponent at this sigma, minimized over the iteration count.
  std::pair<double, int> eval(double sigma) const {
    double best = kInf;
    int best_n = 0;
    int ns;
    try {
      ns = n_star(sigma, params);
    } catch (const std::invalid_argument&) {
      return {kInf, 0};
    }
    const int hi = std::min(n_max, ns + 3);
    for (int n = 1; n <= hi; ++n) {
      // Exponents are n-independent beyond n*+1; skip the interior.
      if (n > 1 && n <= ns) continue;
      const double v = cone_requirement(params, sigma, n, which);
      if (v < best) {
        best = v;
        best_n = n;
      }
    }
    return {best, best_n};
  }
};

}  // namespace

ExponentResult lc_exponent_numeric(const ModelParams& params, Cone which,
                                   int n_max, int sigma_grid) {
  params.validate();
  if (n_max < 1)
    throw std::invalid_argument("lc_exponent_numeric: n_max must be >= 1");
  if (sigma_grid < 2)
    throw std::invalid_argument("lc_exponent_numeric: grid too coarse");
  const double d = static_cast<double>(params.dim);
  const double lo = (d + 1.0) / (params.alpha + 1.0) + 1e-6;
  const double hi = 1.0 - 1e-6;
  if (!(lo < hi))
    throw std::invalid_argument("lc_exponent_numeric: empty sigma range");

  SigmaObjective obj{params, which, n_max};

  double best_val = kInf, best_sigma = lo;
  int best_idx = 0, best_n = 0;
  for (int i = 0; i < sigma_grid; ++i) {
    const double s = lo + (hi - lo) * i / (sigma_grid - 1);
    auto [v, n] = obj.eval(s);
    if (v < best_val) {
      best_val = v;
      best_sigma = s;
      best_idx = i;
      best_n = n;
    }
  }
  ExponentResult res;
  if (!std::isfinite(best_val)) return res;  // absent

  // Golden-section refinement around the grid minimum.
  double a = lo + (hi - lo) * std::max(0, best_idx - 1) / (sigma_grid - 1);
  double b = lo + (hi - lo) * std::min(sigma_grid - 1, best_idx + 1) /
                      (sigma_grid - 1);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double e = a + gr * (b - a);
  double fc = obj.eval(c).first, fe = obj.eval(e).first;
  while (b - a > 1e-8) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - gr * (b - a);
      fc = obj.eval(c).first;
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + gr * (b - a);
      fe = obj.eval(e).first;
    }
  }
  const double sigma_opt = 0.5 * (a + b);
  auto [val, n_opt] = obj.eval(sigma_opt);
  if (val <= best_val) {
    best_val = val;
    best_sigma = sigma_opt;
    best_n = n_opt;
  }
  res.value = best_val;
  res.optimizer_sigma = best_sigma;
  res.optimizer_n = best_n;
  const double exp_req = 1.0 / (1.0 - *res.optimizer_sigma);
  res.branch = std::abs(*res.value - exp_req) <= 1e-5 * *res.value
                   ? "exp-poly-intersection"
                   : "poly-minimum";
  return res;
}

std::vector<CurveRow> curve(int dim, double alpha_min, double alpha_max,
                            int steps, Cone which) {
  if (!(alpha_min > static_cast<double>(dim)))
    throw std::invalid_argument("curve: alpha_min must exceed dim");
  if (steps < 2) throw std::invalid_argument("curve: steps must be >= 2");
  if (!(alpha_max > alpha_min))
    throw std::invalid_argument("curve: alpha_max must exceed alpha_min");
  std::vector<CurveRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double alpha = alpha_min + (alpha_max - alpha_min) * i / (steps - 1);
    CurveRow row;
    row.alpha = alpha;
    for (Method m : {Method::this_work, Method::foss_feig, Method::matsuta}) {
      LightconeQuery q{alpha, dim, m, which};
      const ExponentResult r =
          which == Cone::lc1 ? lc1_exponent(q) : lc2_exponent(q);
      if (m == Method::this_work) row.this_work = r.value;
      if (m == Method::foss_feig) row.foss_feig = r.value;
      if (m == Method::matsuta) row.matsuta = r.value;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string curve_to_csv(const std::vector<CurveRow>& rows) {
  std::string out = "alpha,this_work,foss_feig,matsuta\n";
  for (const auto& r : rows) {
    out += format_sig17(r.alpha);
    for (const auto& v : {r.this_work, r.foss_feig, r.matsuta}) {
      out += ',';
      if (v) out += format_sig17(*v);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json curve_to_json(const std::vector<CurveRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"alpha", r.alpha}};
    row["this_work"] =
        r.this_work ? nlohmann::json(*r.this_work) : nlohmann::json(nullptr);
    row["foss_feig"] =
        r.foss_feig ? nlohmann::json(*r.foss_feig) : nlohmann::json(nullptr);
    row["matsuta"] =
        r.matsuta ? nlohmann::json(*r.matsuta) : nlohmann::json(nullptr);
    arr.push_back(row);
  }
  return arr;
}

}  // namespace lrb
