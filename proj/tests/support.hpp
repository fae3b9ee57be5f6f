#ifndef PEAKON_TESTS_SUPPORT_HPP_
#define PEAKON_TESTS_SUPPORT_HPP_

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "peakon/grid.hpp"
#include "peakon/lagrangian.hpp"
#include "peakon/transforms.hpp"

namespace peakon::testing {

inline double invert(const std::function<double(double)>& g, double v, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++i) {
    const double m = 0.5 * (lo + hi);
    if (g(m) < v) lo = m; else hi = m;
  }
  return 0.5 * (lo + hi);
}

/// Closed-form profile at t relabeled by eta = xi + y(t, xi), sampled on
/// `n` labels covering xi in [lo, hi]. In the new labels y_eta <= 1.
inline LagrangianProfile arclength_profile(const Problem& pb, double t, double lo, double hi,
                                           Index n) {
  auto g = [&pb, t](double xi) { return xi + lagrangian_at(pb, t, xi).y; };
  const double a = 2 * lo - 10, b = 2 * hi + 10;
  auto g_inv = [=](double eta) { return invert(g, eta, a, b); };
  const std::vector<double> kinks{g(pb.xi1), g(pb.xi2)};
  const Eigen::ArrayXd eta = make_xi_grid(g(lo), g(hi), n, kinks);
  const Eigen::ArrayXd xi = eta.unaryExpr(g_inv);
  const Relabeling r{g_inv, [&pb, t, g_inv](double e) {
                       return 1.0 / (1.0 + lagrangian_at(pb, t, g_inv(e)).y_xi);
                     }};
  return relabel(closed_form_profile(pb, t, xi), r);
}

}  // namespace peakon::testing

#endif  // PEAKON_TESTS_SUPPORT_HPP_
