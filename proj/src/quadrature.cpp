#include "lrb/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace lrb {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa,
                double b, double fb, double m, double fm, double whole,
                double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  // Absolute tolerance, floored relative to the local magnitude so huge
  // integrands terminate at machine precision.
  const double eff_tol =
      std::max(tol, 1e-15 * std::abs(left + right));
  if (depth <= 0 || std::abs(delta) <= 15.0 * eff_tol)
    return left + right + delta / 15.0;
  return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive(f, a, fa, b, fb, m, fm, whole, abs_tol, 48);
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               double a, double abs_tol, double tail_frac) {
  double lo = a;
  double width = std::max(1.0, std::abs(a));
  double total = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double hi = lo + width;
    const double panel = integrate(f, lo, hi, abs_tol);
    total += panel;
    if (k > 2 && std::abs(panel) <= tail_frac * std::max(std::abs(total), 1e-300))
      return total;
    lo = hi;
    width *= 2.0;
  }
  throw std::runtime_error("integrate_semi_infinite: tail failed to converge");
}

}  // namespace lrb
