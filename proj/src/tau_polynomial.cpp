#include "lrb/tau_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrb {

namespace {
constexpr double kKeyEps = 1e-12;

bool key_less(const TauMonomial& a, const TauMonomial& b) {
  if (a.tau_power < b.tau_power - kKeyEps) return true;
  if (a.tau_power > b.tau_power + kKeyEps) return false;
  return a.x_power < b.x_power;
}

bool key_equal(const TauMonomial& a, const TauMonomial& b) {
  return std::abs(a.tau_power - b.tau_power) <= kKeyEps &&
         a.x_power == b.x_power;
}
}  // namespace

TauPolynomial TauPolynomial::monomial(double coeff, double tau_power,
                                      int x_power) {
  TauPolynomial p;
  p.add_term(coeff, tau_power, x_power);
  return p;
}

void TauPolynomial::add_term(double coeff, double tau_power, int x_power) {
  if (coeff < 0.0)
    throw std::invalid_argument("TauPolynomial: negative coefficient");
  if (x_power < 0)
    throw std::invalid_argument("TauPolynomial: negative |X| power");
  if (coeff == 0.0) return;
  TauMonomial m{coeff, tau_power, x_power};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, key_less);
  if (it != terms_.end() && key_equal(*it, m)) {
    it->coeff += coeff;
    return;
  }
  if (terms_.size() >= kMaxTerms)
    throw std::length_error("TauPolynomial: monomial cap exceeded");
  terms_.insert(it, m);
}

TauPolynomial& TauPolynomial::operator+=(const TauPolynomial& other) {
  for (const auto& m : other.terms_) add_term(m.coeff, m.tau_power, m.x_power);
  return *this;
}

TauPolynomial TauPolynomial::scaled(double coeff, double tau_shift,
                                    int x_shift) const {
  TauPolynomial out;
  for (const auto& m : terms_)
    out.add_term(coeff * m.coeff, m.tau_power + tau_shift,
                 m.x_power + x_shift);
  return out;
}

double TauPolynomial::eval(double tau, int x_size) const {
  if (tau < 0.0) throw std::invalid_argument("TauPolynomial: tau < 0");
  double sum = 0.0;
  for (const auto& m : terms_) {
    double tp;
    if (tau == 0.0)
      tp = (m.tau_power == 0.0) ? 1.0 : 0.0;
    else
      tp = std::pow(tau, m.tau_power);
    sum += m.coeff * tp * std::pow(static_cast<double>(x_size), m.x_power);
  }
  return sum;
}

double TauPolynomial::max_tau_power() const {
  if (terms_.empty())
    throw std::logic_error("TauPolynomial: empty polynomial");
  return terms_.back().tau_power;
}

int TauPolynomial::max_x_power() const {
  if (terms_.empty())
    throw std::logic_error("TauPolynomial: empty polynomial");
  int best = 0;
  for (const auto& m : terms_) best = std::max(best, m.x_power);
  return best;
}

int TauPolynomial::max_x_power_at_leading_tau() const {
  double lead = max_tau_power();
  int best = 0;
  for (const auto& m : terms_)
    if (std::abs(m.tau_power - lead) <= kKeyEps)
      best = std::max(best, m.x_power);
  return best;
}

}  // namespace lrb
