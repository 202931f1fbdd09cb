#include <cmath>
#include <limits>

#include <doctest.h>

#include "lrb/bound.hpp"
#include "lrb/iteration.hpp"
#include "lrb/quadrature.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

lrb::ModelParams params_1d(double alpha, int x_size = 1) {
  lrb::ModelParams p;
  p.alpha = alpha;
  p.x_size = x_size;
  return p;
}

// Independent quadrature oracle for the information-spread integral:
// I[lambda] = lambda(0) + int_{1/2}^inf rho^{d-1} lambda(rho) drho.
double numeric_information_integral(const lrb::BoundDescriptor& bound,
                                    double t) {
  const double d = static_cast<double>(bound.params.dim);
  auto f = [&](double rho) {
    return std::pow(rho, d - 1.0) * lrb::eval_bound(bound, rho, t);
  };
  return lrb::eval_bound(bound, 0.0, t) +
         lrb::integrate_semi_infinite(f, 0.5, 1e-10);
}

}  // namespace

TEST_CASE("sigma schedules") {
  CHECK_NOTHROW(lrb::SigmaSchedule({0.9, 0.9, 0.8}));
  CHECK_THROWS_AS(lrb::SigmaSchedule({0.8, 0.9}), std::invalid_argument);
  CHECK_THROWS_AS(lrb::SigmaSchedule({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(lrb::SigmaSchedule(std::vector<double>{}),
                  std::invalid_argument);
  CHECK(lrb::SigmaSchedule::uniform(0.9, 3).is_uniform());
  CHECK_FALSE(lrb::SigmaSchedule({0.9, 0.8}).is_uniform());
}

TEST_CASE("initial bound") {
  lrb::ModelParams p = params_1d(2.0);

  SUBCASE("clamp below unit distance") {
    lrb::BoundDescriptor b = lrb::initial_bound(p, 2.0);
    CHECK(lrb::eval_bound(b, 0.3, 5.0) == 2.0);
  }

  SUBCASE("finite cutoff value") {
    lrb::BoundDescriptor b = lrb::initial_bound(p, 2.0);
    // |X|=1, v=1, R=2, t=1, r=10: 2 e^{1-5}
    CHECK(lrb::eval_bound(b, 10.0, 1.0) ==
          doctest::Approx(2.0 * std::exp(-4.0)).epsilon(1e-12));
    CHECK(lrb::eval_bound(b, 10.0, 1.0) ==
          doctest::Approx(0.03663).epsilon(1e-3));
  }

  SUBCASE("unbounded range is vacuous") {
    lrb::BoundDescriptor b = lrb::initial_bound(p, kInf);
    for (double r : {1.0, 10.0, 1000.0})
      CHECK(lrb::eval_bound(b, r, 1.0) == 2.0);
  }

  SUBCASE("no poly terms, seed flag set") {
    lrb::BoundDescriptor b = lrb::initial_bound(p, 2.0);
    CHECK(b.seed_exponential);
    CHECK(b.poly_terms.empty());
    CHECK(b.iteration_count == 0);
  }

  CHECK_THROWS_AS(lrb::initial_bound(p, 0.0), std::invalid_argument);
}

TEST_CASE("n_star") {
  CHECK(lrb::n_star(0.9, params_1d(1.5)) == 3);
  CHECK(lrb::n_star(0.75, params_1d(3.0)) == 1);
  CHECK(lrb::n_star(0.9, params_1d(3.0)) == 1);
  CHECK(lrb::n_star(0.9, params_1d(2.0)) == 2);
  // sigma d / (sigma alpha - d) = 6 exactly
  CHECK(lrb::n_star(0.75, params_1d(1.5)) == 6);
  CHECK_THROWS_AS(lrb::n_star(0.5, params_1d(2.0)), std::invalid_argument);
}

TEST_CASE("information integral, seed case") {
  lrb::ModelParams p = params_1d(2.0);
  lrb::BoundDescriptor seed = lrb::initial_bound(p, 2.0);
  const lrb::IntegralBound ib = lrb::information_integral(seed);

  SUBCASE("symbolic form c |X| (1 + (R' vt)^d)") {
    REQUIRE(ib.rprime_independent.size() == 1);
    CHECK(ib.rprime_independent.terms()[0].coeff == 1.0);
    CHECK(ib.rprime_independent.terms()[0].tau_power == 0.0);
    CHECK(ib.rprime_independent.terms()[0].x_power == 1);
    REQUIRE(ib.rprime_term.has_value());
    CHECK(ib.rprime_term->rprime_exponent == 1.0);
    REQUIRE(ib.rprime_term->prefactor.size() == 1);
    CHECK(ib.rprime_term->prefactor.terms()[0].tau_power == 1.0);
    CHECK(ib.rprime_term->prefactor.terms()[0].x_power == 1);
  }

  SUBCASE("quadrature oracle at R'=2, vt=1") {
    // lambda_0 clamps to 2 up to rho = 2, then decays as 2 e^{1 - rho/2}:
    // I = 2 + 3 + 4 = 9 exactly.
    const double numeric = numeric_information_integral(seed, 1.0);
    CHECK(numeric == doctest::Approx(9.0).epsilon(1e-8));
    // Fitted constant against the symbolic form 1 + R' vt = 3.
    CHECK(numeric / 3.0 == doctest::Approx(3.0).epsilon(1e-8));
  }

  SUBCASE("uniform constant across cutoffs") {
    double fitted = 0.0;
    for (double rprime : {1.0, 2.0, 4.0})
      for (double t : {0.5, 1.0, 2.0}) {
        lrb::BoundDescriptor b = lrb::initial_bound(p, rprime);
        const double numeric = numeric_information_integral(b, t);
        const double symbolic = 1.0 + rprime * t;  // c = 1, d = 1
        fitted = std::max(fitted, numeric / symbolic);
      }
    CHECK(std::isfinite(fitted));
    CHECK(fitted < 10.0);
  }
}

TEST_CASE("information integral, iterated cases") {
  lrb::ModelParams p = params_1d(2.0);

  SUBCASE("budget carries (vt)^{d/(1-sigma)}") {
    lrb::BoundDescriptor b = lrb::iterate_step(lrb::initial_bound(p, 5.0), 0.9);
    const lrb::IntegralBound ib = lrb::information_integral(b);
    bool found = false;
    for (const auto& m : ib.rprime_independent.terms())
      if (m.tau_power == doctest::Approx(10.0)) found = true;
    CHECK(found);
  }

  SUBCASE("mu2 = -sigma alpha contributes the (vt)^{-8} factor") {
    // sigma = 0.9, alpha = 2, d = 1: (d + mu2)/(1 - sigma) = -8.
    lrb::BoundDescriptor b;
    b.params = p;
    b.sigma_exp = 0.9;
    b.exp_prefactor = lrb::TauPolynomial::monomial(2.0, 0.0, 1);
    b.iteration_count = 1;
    b.poly_terms.push_back({-0.8, lrb::TauPolynomial::monomial(1.0, 2.0, 2),
                            0.9});
    b.poly_terms.push_back({-1.8, lrb::TauPolynomial::monomial(1.0, 1.0, 2),
                            0.9});
    const lrb::IntegralBound ib = lrb::information_integral(b);
    REQUIRE(ib.rprime_term.has_value());  // d + mu1 = 0.2 > 0
    CHECK(ib.rprime_term->rprime_exponent ==
          doctest::Approx(0.2 / 0.9).epsilon(1e-12));
    bool found = false;
    for (const auto& m : ib.rprime_independent.terms())
      if (m.tau_power == doctest::Approx(1.0 - 8.0)) found = true;
    CHECK(found);
  }

  SUBCASE("past n* the integral is cutoff-independent") {
    lrb::BoundDescriptor b;
    b.params = p;
    b.sigma_exp = 0.9;
    b.exp_prefactor = lrb::TauPolynomial::monomial(2.0, 0.0, 1);
    b.iteration_count = 3;
    b.poly_terms.push_back({-1.8, lrb::TauPolynomial::monomial(1.0, 2.0, 2),
                            0.9});
    b.poly_terms.push_back({-1.8, lrb::TauPolynomial::monomial(1.0, 1.0, 2),
                            0.9});
    const lrb::IntegralBound ib = lrb::information_integral(b);
    CHECK_FALSE(ib.rprime_term.has_value());
  }

  SUBCASE("d + mu = 0 is degenerate") {
    lrb::BoundDescriptor b;
    b.params = p;
    b.sigma_exp = 0.9;
    b.exp_prefactor = lrb::TauPolynomial::monomial(2.0, 0.0, 1);
    b.iteration_count = 1;
    b.poly_terms.push_back({-1.0, lrb::TauPolynomial::monomial(1.0, 1.0, 1),
                            0.9});
    CHECK_THROWS_AS(lrb::information_integral(b),
                    lrb::DegenerateExponentError);
  }

  SUBCASE("symbolic form majorizes the quadrature oracle uniformly") {
    lrb::BoundDescriptor l1 = lrb::iterate_step(lrb::initial_bound(p, 10.0),
                                                0.8);
    const lrb::IntegralBound ib = lrb::information_integral(l1);
    double fitted = 0.0;
    for (double rprime : {2.0, 5.0, 10.0}) {
      lrb::BoundDescriptor at_cutoff = l1;
      at_cutoff.cutoff = rprime;
      const double numeric = numeric_information_integral(at_cutoff, 1.0);
      double symbolic = ib.rprime_independent.eval(1.0, p.x_size);
      if (ib.rprime_term)
        symbolic += ib.rprime_term->prefactor.eval(1.0, p.x_size) *
                    std::pow(rprime, ib.rprime_term->rprime_exponent);
      REQUIRE(symbolic > 0.0);
      fitted = std::max(fitted, numeric / symbolic);
    }
    CHECK(std::isfinite(fitted));
    // The uniform constant for this configuration sits near 156; the cap
    // only guards against the ratio blowing up with the cutoff.
    CHECK(fitted < 500.0);
  }
}

TEST_CASE("iterate_step exponents") {
  lrb::ModelParams p = params_1d(2.0);

  SUBCASE("first step from the seed") {
    lrb::BoundDescriptor b = lrb::iterate_step(lrb::initial_bound(p, kInf),
                                               0.8);
    REQUIRE(b.poly_terms.size() == 2);
    CHECK(b.poly_terms[0].r_exponent ==
          doctest::Approx(0.8 * (-2.0 + 1.0)).epsilon(1e-15));
    CHECK(b.poly_terms[1].r_exponent == doctest::Approx(-1.6).epsilon(1e-15));
    CHECK(b.sigma_exp == 0.8);
    CHECK_FALSE(b.seed_exponential);
    CHECK(b.iteration_count == 1);
    CHECK(b.poly_terms[0].cutoff_power == 0.8);
  }

  SUBCASE("first-step prefactors with registry defaults") {
    lrb::ModelParams p2 = params_1d(2.0, 3);
    lrb::BoundDescriptor b =
        lrb::iterate_step(lrb::initial_bound(p2, kInf), 0.8);
    // F1^{(1)} = C tau^{d+1} |X|^2, F2^{(1)} = C tau |X|^2 (C = J = v = 1).
    REQUIRE(b.poly_terms[0].prefactor.size() == 1);
    CHECK(b.poly_terms[0].prefactor.terms()[0].coeff == 1.0);
    CHECK(b.poly_terms[0].prefactor.terms()[0].tau_power == 2.0);
    CHECK(b.poly_terms[0].prefactor.terms()[0].x_power == 2);
    REQUIRE(b.poly_terms[1].prefactor.size() == 1);
    CHECK(b.poly_terms[1].prefactor.terms()[0].coeff == 1.0);
    CHECK(b.poly_terms[1].prefactor.terms()[0].tau_power == 1.0);
    CHECK(b.poly_terms[1].prefactor.terms()[0].x_power == 2);
  }

  SUBCASE("second step closed form, sigma 0.8 alpha 2 d 1") {
    lrb::BoundDescriptor b = lrb::initial_bound(p, kInf);
    b = lrb::iterate_step(b, 0.8);
    b = lrb::iterate_step(b, 0.8);
    CHECK(b.poly_terms[0].r_exponent == doctest::Approx(-1.4).epsilon(1e-12));
    CHECK(b.poly_terms[1].r_exponent == doctest::Approx(-1.6).epsilon(1e-12));
  }

  SUBCASE("past n* both exponents collapse to -sigma alpha") {
    // sigma = 0.9, alpha = 2: n* = 2.
    lrb::BoundDescriptor b = lrb::initial_bound(p, kInf);
    for (int n = 0; n < 4; ++n) b = lrb::iterate_step(b, 0.9);
    REQUIRE(b.poly_terms.size() == 2);
    CHECK(b.poly_terms[0].r_exponent == doctest::Approx(-1.8).epsilon(1e-12));
    CHECK(b.poly_terms[1].r_exponent == doctest::Approx(-1.8).epsilon(1e-12));
  }

  SUBCASE("schedule may not increase") {
    lrb::BoundDescriptor b = lrb::iterate_step(lrb::initial_bound(p, kInf),
                                               0.8);
    CHECK_THROWS_AS(lrb::iterate_step(b, 0.9), std::invalid_argument);
  }

  SUBCASE("sigma alpha must exceed dim") {
    lrb::BoundDescriptor b = lrb::initial_bound(p, kInf);
    CHECK_THROWS_AS(lrb::iterate_step(b, 0.4), std::invalid_argument);
  }
}

TEST_CASE("mu1 closed form") {
  lrb::ModelParams p = params_1d(2.0);

  CHECK(lrb::mu1_closed(lrb::SigmaSchedule::uniform(0.8, 2), 2, p) ==
        doctest::Approx(-1.4).epsilon(1e-15));
  CHECK(lrb::mu1_closed(lrb::SigmaSchedule::uniform(0.8, 1), 1, p) ==
        doctest::Approx(-0.8).epsilon(1e-15));
  // sigma -> 1 limit of the n = 1 value is d - alpha.
  CHECK(lrb::mu1_closed(lrb::SigmaSchedule::uniform(1.0 - 1e-12, 1), 1, p) ==
        doctest::Approx(-1.0).epsilon(1e-9));
  CHECK_THROWS_AS(lrb::mu1_closed(lrb::SigmaSchedule::uniform(0.8, 2), 3, p),
                  std::invalid_argument);
}

TEST_CASE("stepwise mu1 equals the closed form up to n*") {
  for (double alpha : {1.5, 2.0, 3.0}) {
    for (double sigma : {0.8, 0.9}) {
      lrb::ModelParams p = params_1d(alpha);
      if (!(sigma * alpha > 1.0)) continue;
      const int ns = lrb::n_star(sigma, p);
      lrb::BoundDescriptor b = lrb::initial_bound(p, kInf);
      for (int n = 1; n <= ns; ++n) {
        b = lrb::iterate_step(b, sigma);
        const double closed =
            lrb::mu1_closed(lrb::SigmaSchedule::uniform(sigma, n), n, p);
        CHECK(b.poly_terms.front().r_exponent ==
              doctest::Approx(closed).epsilon(1e-12));
        // mu2 = -sigma alpha exactly at every stage
        CHECK(b.poly_terms.back().r_exponent ==
              doctest::Approx(-sigma * alpha).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("gamma exponents past n*") {
  // sigma = 0.9, alpha = 2, d = 1: n* = 2; sigma > (d+1)/(alpha+1) = 2/3.
  lrb::ModelParams p = params_1d(2.0);
  lrb::BoundDescriptor b = lrb::initial_bound(p, kInf);
  const int ns = lrb::n_star(0.9, p);
  for (int n = 0; n < ns; ++n) b = lrb::iterate_step(b, 0.9);

  double prev_gamma1 = kInf;
  double gamma2 = -1.0;
  for (int n = ns; n < ns + 4; ++n) {
    b = lrb::iterate_step(b, 0.9);
    REQUIRE(b.poly_terms.size() == 2);
    const double g1 = b.poly_terms[0].prefactor.max_tau_power();
    const double g2 = b.poly_terms[1].prefactor.max_tau_power();
    if (gamma2 < 0.0)
      gamma2 = g2;
    else
      CHECK(g2 == doctest::Approx(gamma2).epsilon(1e-12));  // constant in n
    CHECK(g1 < prev_gamma1);  // strictly decreasing for sigma > (d+1)/(alpha+1)
    prev_gamma1 = g1;
  }
  CHECK(gamma2 == doctest::Approx(11.0).epsilon(1e-12));  // 1 + d/(1-sigma)
}

TEST_CASE("derive_bound") {
  lrb::ModelParams p = params_1d(2.0);

  SUBCASE("single-iteration structure") {
    lrb::BoundDescriptor b =
        lrb::derive_bound(p, lrb::SigmaSchedule::uniform(0.8, 1));
    REQUIRE(b.poly_terms.size() == 2);
    CHECK(std::isinf(b.cutoff));
    for (const auto& t : b.poly_terms)
      CHECK_FALSE(t.cutoff_power.has_value());
    CHECK(b.iteration_count == 1);
  }

  SUBCASE("theorem shape at sigma 0.9, m = n* + 2") {
    const int m = lrb::n_star(0.9, p) + 2;
    lrb::BoundDescriptor b =
        lrb::derive_bound(p, lrb::SigmaSchedule::uniform(0.9, m));
    const auto lb = lrb::leading_behavior(b);
    CHECK(lb.spatial_exponent == doctest::Approx(-1.8).epsilon(1e-12));
    CHECK(lb.temporal_exponent == doctest::Approx(11.0).epsilon(1e-12));
    CHECK(lrb::eval_bound(b, 0.5, 3.0) == 2.0);
  }
}
