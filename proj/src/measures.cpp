#include "peakon/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "peakon/errors.hpp"
#include "peakon/eulerian.hpp"
#include "peakon/quadrature.hpp"

namespace peakon {
namespace {

// nu_m without domain checks. For q1~ < x < q2~ the bracket below is
// nonzero; both exponentials are factored in log space so that |x| up to the
// double range never overflows.
double nu_m_unchecked(const Problem& pb, double t, double x) {
  const double a = pb.cfg.alpha;
  if (a == 0.0) return 0.0;
  const double c1 = pb.cfg.c1, c2 = pb.cfg.c2;
  const double d1 = pb.k.d1, d2 = pb.k.d2, Lt = pb.k.Ltilde;
  const double T = t - pb.cfg.t0;
  const double gap = -std::expm1(-Lt * T);
  const double pref = 4.0 * a * (1.0 - a) * c1 * c1 * c2 * c2 * gap * gap;
  // e^x / (e^{x - d1 T} B - A)^2 = 1 / (B e^{x/2 - d1 T} - A e^{-x/2})^2
  const double B = Lt + d2 * std::exp(d1 * T) - d1 * std::exp(d2 * T);
  const double A = d1 - d2 * std::exp(-Lt * T) - Lt * std::exp(d2 * T);
  const double e1 = 0.5 * x - d1 * T;
  const double e2 = -0.5 * x;
  const double m = std::max(e1, e2);
  const double w = B * std::exp(e1 - m) - A * std::exp(e2 - m);
  const double log_val = std::log(pref) - 2.0 * m - 2.0 * std::log(std::abs(w));
  if (log_val < -745.0) return 0.0;
  return std::exp(log_val);
}

std::vector<double> pair_breakpoints(const Problem& pb, double t) {
  switch (branch_at(pb, t)) {
    case SolutionBranch::AtBreaking:
      return {0.0};
    case SolutionBranch::PostOnePeakon:
      return {one_peakon_position(pb, t)};
    default: {
      const PeakonPair pp = trajectories(pb, t);
      return {pp.q1, pp.q2};
    }
  }
}

Measure::Density ux_squared(const Problem& pb, double t) {
  return [pb, t](double x) {
    const double v = eval_ux(pb, t, x);
    return v * v;
  };
}

}  // namespace

Measure::Measure(Density density, std::vector<double> breakpoints, std::vector<Atom> atoms)
    : density_(std::move(density)),
      breakpoints_(std::move(breakpoints)),
      atoms_(std::move(atoms)) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& l, const Atom& r) { return l.x < r.x; });
}

Measure mu_at(const Problem& pb, double t) {
  std::vector<Atom> atoms;
  if (branch_at(pb, t) == SolutionBranch::AtBreaking) {
    atoms.push_back({0.0, -4.0 * (1.0 - pb.cfg.alpha) * pb.cfg.c1 * pb.cfg.c2});
  }
  return Measure(ux_squared(pb, t), pair_breakpoints(pb, t), std::move(atoms));
}

Measure nu_at(const Problem& pb, double t) {
  const double concentrated = -4.0 * pb.cfg.c1 * pb.cfg.c2;
  switch (branch_at(pb, t)) {
    case SolutionBranch::PreBreaking:
      return mu_at(pb, t);
    case SolutionBranch::AtBreaking:
      return Measure(ux_squared(pb, t), {0.0}, {{0.0, concentrated}});
    case SolutionBranch::PostOnePeakon: {
      const double x0 = one_peakon_position(pb, t);
      return Measure(ux_squared(pb, t), {x0}, {{x0, concentrated}});
    }
    case SolutionBranch::PostTwoPeakon:
      break;
  }
  const PeakonPair pp = trajectories(pb, t);
  auto base = ux_squared(pb, t);
  auto density = [pb, t, base, lo = pp.q1, hi = pp.q2](double x) {
    double v = base(x);
    if (x > lo && x < hi) v += nu_m_unchecked(pb, t, x);
    return v;
  };
  return Measure(density, {pp.q1, pp.q2}, {});
}

double nu_m_density(const Problem& pb, double t, double x) {
  if (pb.dissipative()) {
    throw BranchError("nu_m is defined for alpha < 1 only");
  }
  if (!(t > pb.cfg.t0) || branch_at(pb, t) != SolutionBranch::PostTwoPeakon) {
    throw DomainError("nu_m is defined after the collision only");
  }
  const PeakonPair pp = trajectories(pb, t);
  if (!(x > pp.q1 && x < pp.q2)) {
    std::ostringstream os;
    os << "x=" << x << " outside (" << pp.q1 << ", " << pp.q2 << ")";
    throw DomainError(os.str());
  }
  return nu_m_unchecked(pb, t, x);
}

double total_mass(const Measure& m, double a, double b) {
  double sum = quadrature::integrate([&m](double x) { return m.density(x); }, a, b,
                                     m.breakpoints());
  for (const Atom& at : m.atoms()) {
    if (at.x >= a && at.x <= b) sum += at.mass;
  }
  return sum;
}

EulerianState eulerian_state(const Problem& pb, double t) {
  EulerianState st;
  st.t = t;
  st.field.u = [pb, t](double x) { return eval_u(pb, t, x); };
  st.field.ux = [pb, t](double x) { return eval_ux(pb, t, x); };
  st.mu = mu_at(pb, t);
  st.nu = nu_at(pb, t);
  return st;
}

}  // namespace peakon
