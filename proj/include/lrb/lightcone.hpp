#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lrb/model_params.hpp"

namespace lrb {

enum class Method { this_work, foss_feig, matsuta };
enum class Cone { lc1, lc2 };

std::string method_name(Method m);

struct LightconeQuery {
  double alpha;
  int dim;
  Method method;
  Cone which;
};

struct ExponentResult {
  std::optional<double> value;  // absent = no finite power-law light-cone
  std::optional<double> optimizer_sigma;
  std::optional<int> optimizer_n;
  std::string branch;  // "exp-poly-intersection", "poly-minimum", "closed-form"
};

// beta^{LC1} = (alpha+1)/(alpha-d), identical for all three methods.
ExponentResult lc1_exponent(const LightconeQuery& q);

// Piecewise LC2 algebra per method; absence encoded in the optional.
ExponentResult lc2_exponent(const LightconeQuery& q);

// Crossover alpha_M = (3d/2)(1 + sqrt(1 + 8/(9d))).
double alpha_m(int dim);

// Low-alpha LC2 exponent of the iterated bound.
double beta_tilde(double alpha, int dim);

struct SigmaOptima {
  double lc1_exp;  // (d+1)/(alpha+1)
  double lc2_exp;  // (2d+2)/(alpha+2)
  double lc2_min;  // 1 + d/2 - (d/2) sqrt(1 + 2/d - 2/alpha)
};
SigmaOptima sigma_optima(double alpha, int dim);

// Independent route: builds the iterated bound's term list over a sigma grid
// and n sweep, reads off the per-term critical exponents along r = t^gamma,
// and minimizes with golden-section refinement. n_max = 1 restricts to the
// single-iteration (Matsuta-style) bound.
ExponentResult lc_exponent_numeric(const ModelParams& params, Cone which,
                                   int n_max, int sigma_grid = 2000);

struct CurveRow {
  double alpha;
  std::optional<double> this_work;
  std::optional<double> foss_feig;
  std::optional<double> matsuta;
};

std::vector<CurveRow> curve(int dim, double alpha_min, double alpha_max,
                            int steps, Cone which);

// CSV header `alpha,this_work,foss_feig,matsuta`; empty field = no cone.
std::string curve_to_csv(const std::vector<CurveRow>& rows);
nlohmann::json curve_to_json(const std::vector<CurveRow>& rows);

}  // namespace lrb
