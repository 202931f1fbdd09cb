// lrb: derive iterated Lieb-Robinson bounds, compute light-cone exponents,
// and cross-check both against exact small-lattice dynamics.
//
// Exit codes: 0 success, 2 parameter validation failure, 3 invariant failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <json.hpp>

#include "lrb/dynamics.hpp"
#include "lrb/hamiltonian.hpp"
#include "lrb/io.hpp"
#include "lrb/iteration.hpp"
#include "lrb/lemmas.hpp"
#include "lrb/lightcone.hpp"
#include "lrb/quadrature.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

double theorem_sigma_floor(double alpha, int dim) {
  return (dim + 1.0) / (alpha + 1.0);
}

lrb::BoundDescriptor derive_with_nudge(const lrb::ModelParams& params,
                                       double sigma, int iterations) {
  try {
    return lrb::derive_bound(params,
                             lrb::SigmaSchedule::uniform(sigma, iterations));
  } catch (const lrb::DegenerateExponentError&) {
    // d + mu = 0 is measure zero in sigma; step off it.
    return lrb::derive_bound(
        params, lrb::SigmaSchedule::uniform(sigma + 1e-9, iterations));
  }
}

// ---------------------------------------------------------------- derive --

struct DeriveOpts {
  double alpha = 2.0;
  int dim = 1;
  double sigma = 0.9;
  int iterations = 5;
  int x_size = 1;
  double cutoff = kInf;
  bool allow_loose_sigma = false;
  std::string out;
};

int cmd_derive(const DeriveOpts& o) {
  if (!(o.alpha > o.dim))
    throw ValidationError("derive: alpha must exceed dim");
  if (o.iterations < 0)
    throw ValidationError("derive: iterations must be >= 0");
  if (o.x_size < 1) throw ValidationError("derive: x-size must be >= 1");

  lrb::ModelParams params;
  params.alpha = o.alpha;
  params.dim = o.dim;
  params.x_size = o.x_size;

  lrb::BoundDescriptor bound;
  if (o.iterations == 0) {
    bound = lrb::initial_bound(params, o.cutoff);
  } else {
    if (!(o.sigma > 0.0 && o.sigma < 1.0))
      throw ValidationError("derive: sigma must lie in (0,1)");
    if (!o.allow_loose_sigma &&
        !(o.sigma > theorem_sigma_floor(o.alpha, o.dim)))
      throw ValidationError(
          "derive: sigma below (d+1)/(alpha+1); pass --allow-loose-sigma to "
          "override");
    if (!(o.sigma * o.alpha > o.dim))
      throw ValidationError("derive: requires sigma * alpha > dim");
    bound = derive_with_nudge(params, o.sigma, o.iterations);
  }
  write_output(o.out, lrb::bound_to_json(bound).dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------- lightcone --

struct LightconeOpts {
  int dim = 1;
  double alpha_min = 1.05;
  double alpha_max = 8.0;
  int steps = 50;
  std::string which = "lc2";
  std::string method = "all";
  std::string format = "csv";
  std::string out;
};

int cmd_lightcone(const LightconeOpts& o) {
  if (!(o.alpha_min > o.dim))
    throw ValidationError("lightcone: alpha-min must exceed dim");
  if (!(o.alpha_max > o.alpha_min))
    throw ValidationError("lightcone: alpha-max must exceed alpha-min");
  if (o.steps < 2) throw ValidationError("lightcone: steps must be >= 2");

  const lrb::Cone which = o.which == "lc1" ? lrb::Cone::lc1 : lrb::Cone::lc2;
  const auto rows = lrb::curve(o.dim, o.alpha_min, o.alpha_max, o.steps, which);

  auto pick = [&](const lrb::CurveRow& r) -> std::optional<double> {
    if (o.method == "this_work") return r.this_work;
    if (o.method == "foss_feig") return r.foss_feig;
    return r.matsuta;
  };

  std::string content;
  if (o.format == "json") {
    if (o.method == "all") {
      content = lrb::curve_to_json(rows).dump(2) + "\n";
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) {
        const auto v = pick(r);
        arr.push_back({{"alpha", r.alpha},
                       {o.method, v ? nlohmann::json(*v)
                                    : nlohmann::json(nullptr)}});
      }
      content = arr.dump(2) + "\n";
    }
  } else {
    if (o.method == "all") {
      content = lrb::curve_to_csv(rows);
    } else {
      content = "alpha," + o.method + "\n";
      for (const auto& r : rows) {
        const auto v = pick(r);
        content += lrb::format_sig17(r.alpha);
        content += ',';
        if (v) content += lrb::format_sig17(*v);
        content += '\n';
      }
    }
  }
  write_output(o.out, content);
  return 0;
}

// ---------------------------------------------------------------- verify --

struct VerifyOpts {
  std::string model = "ising";
  int sites = 6;
  double alpha = 2.0;
  double coupling = 1.0;
  double field = 1.0;
  double tmax = 1.0;
  int steps = 10;
  std::string bound_file;
  double sigma = 0.0;  // 0 = midpoint of the proven range
  int iterations = 0;  // 0 = n* + 2
  unsigned seed = 0;
  std::string out;
  std::string front_out;
};

lrb::BoundDescriptor bound_for_model(const lrb::HamiltonianSpec& h,
                                     const VerifyOpts& o) {
  if (!o.bound_file.empty()) {
    std::ifstream in(o.bound_file);
    if (!in)
      throw ValidationError("cannot open bound file: " + o.bound_file);
    nlohmann::json j;
    in >> j;
    return lrb::bound_from_json(j);
  }
  lrb::ModelParams params;
  params.alpha = o.alpha;
  params.dim = h.lattice.dim();
  params.j_const = lrb::fit_decay(h, o.alpha);
  params.c0 = lrb::interaction_budget(h);
  params.x_size = 1;
  double sigma = o.sigma;
  if (sigma == 0.0)
    sigma = 0.5 * (theorem_sigma_floor(o.alpha, params.dim) + 1.0);
  if (!(sigma > 0.0 && sigma < 1.0))
    throw ValidationError("verify: sigma must lie in (0,1)");
  if (!(sigma * o.alpha > params.dim))
    throw ValidationError("verify: requires sigma * alpha > dim");
  int iters = o.iterations;
  if (iters == 0) iters = lrb::n_star(sigma, params) + 2;
  return derive_with_nudge(params, sigma, iters);
}

int cmd_verify(const VerifyOpts& o) {
  if (o.model != "ising")
    throw ValidationError("verify: unknown model '" + o.model + "'");
  if (o.sites < 2 || o.sites > 14)
    throw ValidationError("verify: sites must lie in [2, 14]");
  if (!(o.alpha > 1.0)) throw ValidationError("verify: alpha must exceed 1");
  if (!(o.tmax > 0.0)) throw ValidationError("verify: tmax must be positive");
  if (o.steps < 1) throw ValidationError("verify: steps must be >= 1");

  const lrb::HamiltonianSpec h =
      lrb::build_power_law_ising(o.sites, o.alpha, 1, o.coupling, o.field);
  const lrb::ObservableSpec a{{0}, "X"};

  std::vector<int> probes;
  for (int z = 1; z < o.sites; ++z) probes.push_back(z);
  std::vector<double> times;
  for (int i = 1; i <= o.steps; ++i) times.push_back(o.tmax * i / o.steps);

  lrb::FrontTable front = lrb::front_scan(h, a, probes, times);
  front.meta.alpha = o.alpha;
  front.meta.model = o.model;
  front.meta.seed = o.seed;

  // Oracle invariants: norm preservation and vanishing commutators at t = 0.
  lrb::Evolver ev(h);
  const double norm_t = lrb::spectral_norm(ev.evolve(a, o.tmax));
  const bool unitary_ok = std::abs(norm_t - 1.0) < 1e-9;
  double zero_t0 = 0.0;
  for (int z : probes)
    zero_t0 = std::max(zero_t0, lrb::commutator_norm(h, a, {{z}, "X"}, 0.0));
  const bool zero_ok = zero_t0 < 1e-12;

  const lrb::BoundDescriptor bound = bound_for_model(h, o);
  const lrb::DominanceReport rep = lrb::dominance_report(front, bound);

  double front_max = 0.0, front_min = kInf;
  for (const auto& row : front.rows) {
    front_max = std::max(front_max, row.value);
    front_min = std::min(front_min, row.value);
  }

  nlohmann::json report = {
      {"model", o.model},
      {"sites", o.sites},
      {"alpha", o.alpha},
      {"kappa", rep.kappa},
      {"peak_r", rep.peak_r},
      {"peak_t", rep.peak_t},
      {"front_max", front_max},
      {"front_min", front_min},
      {"rows", front.rows.size()},
      {"invariants",
       {{"unitarity", unitary_ok}, {"zero_at_t0", zero_ok}}},
      {"bound", lrb::bound_to_json(bound)}};
  write_output(o.out, report.dump(2) + "\n");
  if (!o.front_out.empty()) {
    write_output(o.front_out, lrb::front_to_csv(front));
    write_output(o.front_out + ".meta.json",
                 lrb::front_meta_to_json(front).dump(2) + "\n");
  }
  if (!unitary_ok || !zero_ok)
    throw InvariantError("verify: oracle invariant failed");
  return 0;
}

// --------------------------------------------------------------- perturb --

struct PerturbOpts {
  int sites = 6;
  double alpha = 2.0;
  double coupling = 1.0;
  double field = 1.0;
  double delta = 0.5;
  int site = -1;  // -1 = farthest site from the observable
  double rmin = 2.0;
  double tmax = 2.0;
  int steps = 8;
  double scale = 1.0;
  std::string out;
};

int cmd_perturb(const PerturbOpts& o) {
  if (o.sites < 2 || o.sites > 14)
    throw ValidationError("perturb: sites must lie in [2, 14]");
  if (!(o.tmax > 0.0)) throw ValidationError("perturb: tmax must be positive");
  if (o.steps < 1) throw ValidationError("perturb: steps must be >= 1");
  if (o.rmin < 0.0) throw ValidationError("perturb: rmin must be >= 0");

  const lrb::HamiltonianSpec h1 =
      lrb::build_power_law_ising(o.sites, o.alpha, 1, o.coupling, o.field);
  const lrb::ObservableSpec obs{{0}, "X"};

  // Place the perturbation; an exclusion ball past the lattice leaves
  // Delta H empty and every LHS row zero.
  int site = o.site;
  if (site < 0) site = o.sites - 1;
  if (site >= o.sites) throw ValidationError("perturb: site outside lattice");
  const double r = h1.lattice.distance(0, site);
  bool perturbed = o.rmin <= h1.lattice.diameter();
  if (perturbed && r < o.rmin)
    throw ValidationError(
        "perturb: perturbation site inside the exclusion ball");

  lrb::HamiltonianSpec h2 = h1;
  const double dj = perturbed ? std::abs(o.delta * o.scale) : 0.0;
  if (perturbed) h2.terms.push_back({{site}, "Z", o.delta * o.scale});

  VerifyOpts bound_opts;
  bound_opts.alpha = o.alpha;
  const lrb::BoundDescriptor bound = bound_for_model(h1, bound_opts);
  const double d = static_cast<double>(h1.lattice.dim());
  const double rhi = h1.lattice.diameter() + 1.0;

  nlohmann::json rows = nlohmann::json::array();
  std::vector<double> lhs_list, integral_list;
  for (int i = 1; i <= o.steps; ++i) {
    const double t = o.tmax * i / o.steps;
    const double lhs = lrb::perturbation_diff(h1, h2, obs, t);
    const double duhamel = std::min(2.0, 2.0 * t * dj);
    const double integral =
        dj == 0.0 ? 0.0
                  : dj * t *
                        lrb::integrate(
                            [&](double rr) {
                              return lrb::eval_bound(bound, rr, t) *
                                     std::pow(rr, d - 1.0);
                            },
                            std::max(1.0, o.rmin), rhi);
    lhs_list.push_back(lhs);
    integral_list.push_back(integral);
    rows.push_back({{"t", t}, {"lhs", lhs}, {"duhamel_rhs", duhamel},
                    {"bound_integral", integral}});
  }
  double fitted = 0.0;
  for (std::size_t i = 0; i < lhs_list.size(); ++i)
    if (integral_list[i] > 0.0)
      fitted = std::max(fitted, lhs_list[i] / integral_list[i]);
  for (auto& row : rows)
    row["bound_integral_rhs"] =
        fitted * row["bound_integral"].get<double>();

  nlohmann::json report = {{"sites", o.sites},
                           {"alpha", o.alpha},
                           {"delta", o.delta * o.scale},
                           {"site", site},
                           {"rmin", o.rmin},
                           {"fitted_constant", fitted},
                           {"rows", rows}};
  write_output(o.out, report.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- lemmas --

struct LemmasOpts {
  std::string check = "gamma";
  double mu = 0.0;
  double nu = 1.0;
  double rho_max = 10.0;
  int points = 20;
  int length = 101;
  int dim = 1;
  double exponent = 3.0;
  double radius = 50.0;
  std::string out;
};

int cmd_lemmas(const LemmasOpts& o) {
  std::string content;
  if (o.check == "gamma") {
    if (!(o.nu > 0.0)) throw ValidationError("lemmas: nu must be positive");
    if (!(o.rho_max > 0.0) || o.points < 1)
      throw ValidationError("lemmas: bad rho grid");
    std::vector<double> grid;
    for (int i = 1; i <= o.points; ++i)
      grid.push_back(o.rho_max * i / o.points);
    const double c = lrb::check_incomplete_gamma(o.mu, o.nu, grid);
    content = "mu,nu,rho_max,C\n" + lrb::format_sig17(o.mu) + "," +
              lrb::format_sig17(o.nu) + "," + lrb::format_sig17(o.rho_max) +
              "," + lrb::format_sig17(c) + "\n";
  } else if (o.check == "sum") {
    if (o.length < 1) throw ValidationError("lemmas: length must be >= 1");
    const lrb::Lattice lat = o.dim == 1
                                 ? lrb::Lattice::chain(o.length)
                                 : lrb::Lattice::square(o.length, o.length);
    const double p = o.exponent;
    const double c = lrb::check_sum_vs_integral(
        lat, [p](double r) { return std::pow(r, -p); }, o.radius);
    content = "dim,length,exponent,R,C\n" + std::to_string(o.dim) + "," +
              std::to_string(o.length) + "," + lrb::format_sig17(o.exponent) +
              "," + lrb::format_sig17(o.radius) + "," + lrb::format_sig17(c) +
              "\n";
  } else {
    throw ValidationError("lemmas: --check must be gamma or sum");
  }
  write_output(o.out, content);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("LRB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }

  CLI::App app{"Iterated Lieb-Robinson bounds for power-law interactions"};
  app.require_subcommand(1);

  DeriveOpts d;
  auto* derive = app.add_subcommand("derive", "Derive an iterated bound");
  derive->add_option("--alpha", d.alpha, "Power-law exponent (> dim)");
  derive->add_option("--dim", d.dim, "Spatial dimension");
  derive->add_option("--sigma", d.sigma, "Uniform cutoff exponent in (0,1)");
  derive->add_option("--iterations", d.iterations,
                     "Iteration count (0 emits the seed bound)");
  derive->add_option("--x-size", d.x_size, "Observable support size |X|");
  derive->add_option("--cutoff", d.cutoff, "Seed cutoff R (default infinite)");
  derive->add_flag("--allow-loose-sigma", d.allow_loose_sigma,
                   "Permit sigma below the proven range");
  derive->add_option("--out", d.out, "Output path (default stdout)");

  LightconeOpts l;
  auto* lightcone =
      app.add_subcommand("lightcone", "Light-cone exponent curves");
  lightcone->add_option("--dim", l.dim, "Spatial dimension");
  lightcone->add_option("--alpha-min", l.alpha_min, "Grid start (> dim)");
  lightcone->add_option("--alpha-max", l.alpha_max, "Grid end");
  lightcone->add_option("--steps", l.steps, "Grid points");
  lightcone->add_option("--which", l.which, "lc1 or lc2")
      ->check(CLI::IsMember({"lc1", "lc2"}));
  lightcone->add_option("--method", l.method, "all or a single method")
      ->check(CLI::IsMember({"all", "this_work", "foss_feig", "matsuta"}));
  lightcone->add_option("--format", l.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  lightcone->add_option("--out", l.out, "Output path (default stdout)");

  VerifyOpts v;
  auto* verify =
      app.add_subcommand("verify", "Exact-dynamics front vs derived bound");
  verify->add_option("--model", v.model, "Model name (ising)");
  verify->add_option("--sites", v.sites, "Chain length (<= 14)");
  verify->add_option("--alpha", v.alpha, "Power-law exponent");
  verify->add_option("--coupling", v.coupling, "ZZ coupling J");
  verify->add_option("--field", v.field, "Transverse field strength");
  verify->add_option("--tmax", v.tmax, "Largest time");
  verify->add_option("--steps", v.steps, "Time grid points");
  verify->add_option("--bound-file", v.bound_file,
                     "Use this bound JSON instead of deriving one");
  verify->add_option("--sigma", v.sigma, "Sigma for the derived bound");
  verify->add_option("--iterations", v.iterations,
                     "Iterations for the derived bound (0 = n*+2)");
  verify->add_option("--seed", v.seed, "Seed recorded in metadata");
  verify->add_option("--out", v.out, "Report path (default stdout)");
  verify->add_option("--front-out", v.front_out,
                     "Also write the front CSV (+ .meta.json sidecar)");

  PerturbOpts p;
  auto* perturb =
      app.add_subcommand("perturb", "Perturbation (Duhamel) comparison");
  perturb->add_option("--sites", p.sites, "Chain length (<= 14)");
  perturb->add_option("--alpha", p.alpha, "Power-law exponent");
  perturb->add_option("--coupling", p.coupling, "ZZ coupling J");
  perturb->add_option("--field", p.field, "Transverse field strength");
  perturb->add_option("--delta", p.delta, "Perturbation coefficient");
  perturb->add_option("--site", p.site,
                      "Perturbed site (-1 = farthest from the observable)");
  perturb->add_option("--rmin", p.rmin, "Exclusion radius around the observable");
  perturb->add_option("--tmax", p.tmax, "Largest time");
  perturb->add_option("--steps", p.steps, "Time grid points");
  perturb->add_option("--scale", p.scale, "Extra factor on delta");
  perturb->add_option("--out", p.out, "Report path (default stdout)");

  LemmasOpts m;
  auto* lemmas = app.add_subcommand("lemmas", "Numeric lemma constants");
  lemmas->add_option("--check", m.check, "gamma or sum")
      ->check(CLI::IsMember({"gamma", "sum"}));
  lemmas->add_option("--mu", m.mu, "Integrand power");
  lemmas->add_option("--nu", m.nu, "Stretch exponent");
  lemmas->add_option("--rho-max", m.rho_max, "Largest rho on the grid");
  lemmas->add_option("--points", m.points, "Grid points");
  lemmas->add_option("--length", m.length, "Lattice side length");
  lemmas->add_option("--dim", m.dim, "Lattice dimension (1 or 2)");
  lemmas->add_option("--exponent", m.exponent, "Decay exponent p in r^{-p}");
  lemmas->add_option("--radius", m.radius, "Summation radius R");
  lemmas->add_option("--out", m.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (derive->parsed()) return cmd_derive(d);
    if (lightcone->parsed()) return cmd_lightcone(l);
    if (verify->parsed()) return cmd_verify(v);
    if (perturb->parsed()) return cmd_perturb(p);
    if (lemmas->parsed()) return cmd_lemmas(m);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
