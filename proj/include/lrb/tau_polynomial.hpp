#pragma once

#include <cstddef>
#include <vector>

namespace lrb {

struct TauMonomial {
  double coeff = 0.0;    // >= 0
  double tau_power = 0.0;
  int x_power = 0;       // >= 0
};

// Finite sum of coeff * tau^g * |X|^p with tau = v t. The recursion produces
// negative tau powers in subleading terms, so g may be any real; coefficients
// stay nonnegative. Monomials are kept unique on (tau_power, x_power) and the
// count is capped so runaway iteration surfaces as an error.
class TauPolynomial {
 public:
  static constexpr std::size_t kMaxTerms = 256;

  TauPolynomial() = default;
  static TauPolynomial monomial(double coeff, double tau_power, int x_power);

  void add_term(double coeff, double tau_power, int x_power);
  TauPolynomial& operator+=(const TauPolynomial& other);
  friend TauPolynomial operator+(TauPolynomial lhs, const TauPolynomial& rhs) {
    lhs += rhs;
    return lhs;
  }

  // Multiply every monomial by coeff * tau^{tau_shift} * |X|^{x_shift}.
  TauPolynomial scaled(double coeff, double tau_shift, int x_shift) const;

  // tau = 0 returns the tau^0 coefficient only.
  double eval(double tau, int x_size) const;

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  double max_tau_power() const;           // error if empty
  int max_x_power() const;                // error if empty
  int max_x_power_at_leading_tau() const; // among monomials with max tau power
  const std::vector<TauMonomial>& terms() const { return terms_; }

 private:
  std::vector<TauMonomial> terms_;  // sorted by (tau_power, x_power)
};

}  // namespace lrb
