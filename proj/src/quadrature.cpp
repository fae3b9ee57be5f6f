#include "peakon/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace peakon::quadrature {
namespace {

constexpr std::size_t kWorkspaceSize = 2000;

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

gsl_integration_workspace* workspace() {
  static std::once_flag quiet;
  std::call_once(quiet, [] { gsl_set_error_handler_off(); });
  thread_local std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> w(
      gsl_integration_workspace_alloc(kWorkspaceSize));
  return w.get();
}

double trampoline(double x, void* params) {
  const double v = (*static_cast<const Integrand*>(params))(x);
  return std::isfinite(v) ? v : 0.0;
}

// The best estimate is kept when the tolerance cannot be met (roundoff or
// interval limit); callers compare against their own tolerances.
double adaptive(const Integrand& f, double a, double b, const Tolerance& tol) {
  gsl_function fn{&trampoline, const_cast<Integrand*>(&f)};
  const std::size_t limit =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(tol.max_intervals, 1)), 1, kWorkspaceSize);
  double result = 0.0, abserr = 0.0;
  const bool left = std::isinf(a), right = std::isinf(b);
  if (left && right) {
    gsl_integration_qagi(&fn, tol.abs, tol.rel, limit, workspace(), &result, &abserr);
  } else if (left) {
    gsl_integration_qagil(&fn, b, tol.abs, tol.rel, limit, workspace(), &result, &abserr);
  } else if (right) {
    gsl_integration_qagiu(&fn, a, tol.abs, tol.rel, limit, workspace(), &result, &abserr);
  } else {
    gsl_integration_qag(&fn, a, b, tol.abs, tol.rel, limit, GSL_INTEG_GAUSS15, workspace(),
                        &result, &abserr);
  }
  return result;
}

}  // namespace

double integrate(const Integrand& f, double a, double b, Tolerance tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, tol);
  return adaptive(f, a, b, tol);
}

double integrate(const Integrand& f, double a, double b,
                 std::span<const double> breakpoints, Tolerance tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, breakpoints, tol);
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += adaptive(f, cuts[i], cuts[i + 1], tol);
  }
  return sum;
}

double integrate_left_tail(const Integrand& f, double b, Tolerance tol) {
  return adaptive(f, -std::numeric_limits<double>::infinity(), b, tol);
}

double integrate_right_tail(const Integrand& f, double a, Tolerance tol) {
  return adaptive(f, a, std::numeric_limits<double>::infinity(), tol);
}

}  // namespace peakon::quadrature
