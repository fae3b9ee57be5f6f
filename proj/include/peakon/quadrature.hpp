#ifndef PEAKON_QUADRATURE_HPP_
#define PEAKON_QUADRATURE_HPP_

#include <functional>
#include <limits>
#include <span>

namespace peakon::quadrature {

using Integrand = std::function<double(double)>;

struct Tolerance {
  double abs = 1e-13;
  double rel = 1e-12;
  int max_intervals = 2000;  // subdivision limit of the adaptive rule
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b]
/// (QUADPACK QAG from GSL; QAGI on infinite ranges). Non-finite
/// integrand values (endpoint overflow in tails) count as zero.
double integrate(const Integrand& f, double a, double b, Tolerance tol = {});

/// Same, splitting [a, b] at every breakpoint that falls strictly inside.
double integrate(const Integrand& f, double a, double b,
                 std::span<const double> breakpoints, Tolerance tol = {});

/// Integral of f over (-inf, b].
double integrate_left_tail(const Integrand& f, double b, Tolerance tol = {});

/// Integral of f over [a, +inf).
double integrate_right_tail(const Integrand& f, double a, Tolerance tol = {});

}  // namespace peakon::quadrature

#endif  // PEAKON_QUADRATURE_HPP_
