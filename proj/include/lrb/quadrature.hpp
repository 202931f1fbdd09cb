#pragma once

#include <functional>

namespace lrb {

// Adaptive Simpson quadrature to an absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12);

// Integral over [a, inf): extends the upper limit by doubling until the last
// panel falls below tail_frac of the running total. Throws if it fails to
// converge.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double a, double abs_tol = 1e-12,
                               double tail_frac = 1e-14);

}  // namespace lrb
