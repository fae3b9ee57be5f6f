#include "peakon/lagrangian.hpp"

#include <cmath>
#include <sstream>

#include "peakon/errors.hpp"
#include "peakon/eulerian.hpp"

namespace peakon {
namespace {

[[noreturn]] void bad_argument(const char* piece, double t, double xi, double value) {
  std::ostringstream os;
  os << piece << " logarithm argument " << value << " is not positive at t=" << t
     << ", xi=" << xi;
  throw BranchArgumentError(os.str());
}

// Outer pieces share one shape: y = xi -+ log1p(a e^{-+xi}), y_xi = 1/(1 + a e^{-+xi}),
// U = amp e^{-+xi} / (1 + a e^{-+xi}), and h = h_bar = U^2 y_xi because u_x = +-u
// there.
LagrangianSample left_piece(double a, double amp, double xi, double t) {
  const double ax = a * std::exp(xi);
  const double q = 1.0 + ax;
  if (!(q > 0.0) || !std::isfinite(q)) bad_argument("left", t, xi, q);
  LagrangianSample s;
  s.y = xi - std::log1p(ax);
  s.y_xi = 1.0 / q;
  s.U = amp * std::exp(xi) / q;
  s.U_xi = s.U * s.y_xi;
  s.h = s.U * s.U * s.y_xi;
  s.h_bar = s.h;
  return s;
}

LagrangianSample right_piece(double b, double amp, double xi, double t) {
  const double bx = b * std::exp(-xi);
  const double q = 1.0 + bx;
  if (!(q > 0.0) || !std::isfinite(q)) bad_argument("right", t, xi, q);
  LagrangianSample s;
  s.y = xi + std::log1p(bx);
  s.y_xi = 1.0 / q;
  s.U = amp * std::exp(-xi) / q;
  s.U_xi = -s.U * s.y_xi;
  s.h = s.U * s.U * s.y_xi;
  s.h_bar = s.h;
  return s;
}

// h(t0, xi) on the collapsed interval: the energy that ends up in the atom.
double collapsed_density(const Problem& pb, double xi) {
  const double c1 = pb.cfg.c1, c2 = pb.cfg.c2, t0 = pb.cfg.t0, L = pb.k.L;
  const double eL = std::exp(-L * t0);
  const double k1 = -std::expm1(-L * t0);
  const double den = L * std::exp(-c1 * t0) + c2 - c1 * eL +
                     (-c1 + c2 * eL + L * std::exp(c2 * t0)) * std::exp(xi);
  return 4.0 * c1 * c1 * c2 * c2 * k1 * k1 * std::exp(xi) / (den * den);
}

void require_collapsing_interval(const Problem& pb, double xi) {
  if (!(xi >= pb.xi1 && xi <= pb.xi2)) {
    std::ostringstream os;
    os << "xi=" << xi << " outside [" << pb.xi1 << ", " << pb.xi2 << "]";
    throw DomainError(os.str());
  }
}

}  // namespace

LagrangianSample initial_profile(const Problem& pb, double xi) {
  LagrangianSample s;
  s.y = xi;
  s.y_xi = 1.0;
  s.U = eval_u(pb, 0.0, xi);
  s.U_xi = eval_ux(pb, 0.0, xi);
  s.h = s.U_xi * s.U_xi;
  s.h_bar = s.h;
  return s;
}

HelperValues helpers(const Problem& pb, double xi) {
  require_collapsing_interval(pb, xi);
  const double c1 = pb.cfg.c1, c2 = pb.cfg.c2, t0 = pb.cfg.t0, L = pb.k.L;
  const double eL = std::exp(-L * t0);
  const double k1 = -std::expm1(-L * t0);
  HelperValues hv;
  hv.C = c2 - c1 * eL + L * std::exp(xi + c2 * t0);
  hv.D = L * L * std::exp(-c1 * t0) - L * c1 * std::exp(xi) + L * c2 * std::exp(xi - L * t0);
  const double lcd = L * hv.C + hv.D;
  const double K = c1 - c2 * eL + L * std::exp(c2 * t0);
  const double Km = -c1 + c2 * eL + L * std::exp(c2 * t0);
  hv.S = (2.0 * c1 * c2 * L * k1 * k1 - K * lcd) / (Km * lcd);
  hv.S_prime = -2.0 * c1 * c2 * L * L * k1 * k1 * std::exp(xi) / (lcd * lcd);
  return hv;
}

namespace detail {

LagrangianSample pre_formulas(const Problem& pb, double t, double xi) {
  const double c1 = pb.cfg.c1, c2 = pb.cfg.c2, t0 = pb.cfg.t0, L = pb.k.L;
  const double T = t - t0;
  if (xi < pb.xi1) {
    const double a = (c1 * std::exp(-c1 * T) - c1 * std::exp(c1 * t0) -
                      c2 * std::exp(-c2 * T) + c2 * std::exp(c2 * t0)) / L;
    const double amp = (c1 * c1 * std::exp(-c1 * T) - c2 * c2 * std::exp(-c2 * T)) / L;
    return left_piece(a, amp, xi, t);
  }
  if (xi > pb.xi2) {
    const double b = (c1 * std::exp(c1 * T) - c1 * std::exp(-c1 * t0) -
                      c2 * std::exp(c2 * T) + c2 * std::exp(-c2 * t0)) / L;
    const double amp = (c1 * c1 * std::exp(c1 * T) - c2 * c2 * std::exp(c2 * T)) / L;
    return right_piece(b, amp, xi, t);
  }

  // Between the peaks. num and den are both negative on [xi1, xi2].
  const double C = c2 - c1 * std::exp(-L * t0) + L * std::exp(xi + c2 * t0);
  const double D = L * L * std::exp(-c1 * t0) - L * c1 * std::exp(xi) +
                   L * c2 * std::exp(xi - L * t0);
  const double E = std::exp(L * T);
  const double em = -std::expm1(L * T);
  const double k1 = -std::expm1(-L * t0);
  const double e1 = std::exp(c1 * T), e2 = std::exp(c2 * T);
  const double num = (c1 * E - c2) * D + L * L * e1 * C;
  const double den = D + (c1 * e2 - c2 * e1) * C;
  const double ratio = num / den;
  if (!(ratio > 0.0) || !std::isfinite(ratio)) bad_argument("middle", t, xi, ratio);

  LagrangianSample s;
  s.y = c2 * T - std::log(L) + std::log(ratio);
  // y_xi = em^2 g; the pair factor -4 p1 p2 e^{q1-q2} equals 4 L^2 E / em^2, so
  // h = U^2 y_xi + 4 L^2 E g stays finite as em -> 0.
  const double g = c1 * c1 * c2 * c2 * L * e2 * k1 * k1 * std::exp(xi) / (den * num);
  s.y_xi = em * em * g;
  s.U = (D * D * (c1 * c1 * E - c2 * c2) + 2.0 * C * D * L * L * e1 * (c1 + c2) +
         C * C * L * L * e1 * (c1 * c1 * e2 - c2 * c2 * e1)) /
        (num * den);
  s.h = s.U * s.U * s.y_xi + 4.0 * L * L * E * g;
  s.h_bar = s.h;
  // u_x = u - 2 p1 e^{q1 - x} with p1 e^{q1} = L e^{c1 T} / em
  s.U_xi = s.U * s.y_xi - 2.0 * L * e1 * std::exp(-s.y) * em * g;
  return s;
}

}  // namespace detail

LagrangianSample profile_pre(const Problem& pb, double t, double xi) {
  if (!(t < pb.cfg.t0)) throw BranchError("profile_pre requires t < t0");
  return detail::pre_formulas(pb, t, xi);
}

LagrangianSample profile_breaking(const Problem& pb, double xi) {
  if (xi < pb.xi1 || xi > pb.xi2) return detail::pre_formulas(pb, pb.cfg.t0, xi);
  LagrangianSample s;
  s.y = 0.0;
  s.y_xi = 0.0;
  s.U = pb.sum();
  s.U_xi = 0.0;
  s.h = collapsed_density(pb, xi);
  s.h_bar = (1.0 - pb.cfg.alpha) * s.h;
  return s;
}

LagrangianSample profile_post_dissipative(const Problem& pb, double t, double xi) {
  if (!pb.dissipative()) throw BranchError("profile_post_dissipative requires alpha = 1");
  if (!(t > pb.cfg.t0)) throw BranchError("profile_post_dissipative requires t > t0");
  const double c1 = pb.cfg.c1, c2 = pb.cfg.c2, t0 = pb.cfg.t0, L = pb.k.L;
  const double s = pb.sum();
  const double T = t - t0;
  if (xi < pb.xi1) {
    const double a = (L * std::exp(-s * T) - c1 * std::exp(c1 * t0) + c2 * std::exp(c2 * t0)) / L;
    return left_piece(a, s * std::exp(-s * T), xi, t);
  }
  if (xi > pb.xi2) {
    const double b = (L * std::exp(s * T) - c1 * std::exp(-c1 * t0) + c2 * std::exp(-c2 * t0)) / L;
    return right_piece(b, s * std::exp(s * T), xi, t);
  }
  LagrangianSample out;
  out.y = s * T;
  out.y_xi = 0.0;
  out.U = s;
  out.U_xi = 0.0;
  out.h = collapsed_density(pb, xi);
  out.h_bar = 0.0;
  return out;
}

LagrangianSample profile_post_general(const Problem& pb, double t, double xi) {
  if (pb.dissipative()) throw BranchError("profile_post_general requires alpha < 1");
  if (!(t > pb.cfg.t0)) throw BranchError("profile_post_general requires t > t0");
  const double c1 = pb.cfg.c1, c2 = pb.cfg.c2, t0 = pb.cfg.t0, L = pb.k.L;
  const double d1 = pb.k.d1, d2 = pb.k.d2, Lt = pb.k.Ltilde;
  const double T = t - t0;
  if (xi < pb.xi1) {
    const double a = (Lt * (-c1 * std::exp(c1 * t0) + c2 * std::exp(c2 * t0)) +
                      L * (d1 * std::exp(-d1 * T) - d2 * std::exp(-d2 * T))) / (L * Lt);
    const double amp = (d1 * d1 * std::exp(-d1 * T) - d2 * d2 * std::exp(-d2 * T)) / Lt;
    return left_piece(a, amp, xi, t);
  }
  if (xi > pb.xi2) {
    const double b = (Lt * (-c1 * std::exp(-c1 * t0) + c2 * std::exp(-c2 * t0)) +
                      L * (d1 * std::exp(d1 * T) - d2 * std::exp(d2 * T))) / (L * Lt);
    const double amp = (d1 * d1 * std::exp(d1 * T) - d2 * d2 * std::exp(d2 * T)) / Lt;
    return right_piece(b, amp, xi, t);
  }

  const HelperValues hv = helpers(pb, xi);
  const double S = hv.S;
  const double F = std::exp(-Lt * T);
  const double em = -std::expm1(-Lt * T);
  const double f1 = std::exp(d1 * T), f2 = std::exp(d2 * T);
  const double A1 = Lt * (S + 1.0) + (d2 * f1 - d1 * f2) * (S - 1.0);
  const double A2 = (d1 - d2 * F) * (S + 1.0) - Lt * f2 * (S - 1.0);
  const double N = Lt * f2 * (S - 1.0) + (-d1 + d2 * F) * (S + 1.0);
  const double ratio = -N / A1;
  if (!(ratio > 0.0) || !std::isfinite(ratio)) bad_argument("middle", t, xi, ratio);

  LagrangianSample s;
  s.y = d1 * T + std::log(ratio);
  const double g = -2.0 * d1 * d2 * f1 * hv.S_prime / (A1 * A2);
  s.y_xi = em * em * g;
  s.U = Lt *
        ((d1 * d1 - d2 * d2 * F) * (S + 1.0) * (S + 1.0) -
         2.0 * (d1 * d1 - d2 * d2) * f2 * (S * S - 1.0) +
         f2 * (d1 * d1 * f2 - d2 * d2 * f1) * (S - 1.0) * (S - 1.0)) /
        (A1 * A2);
  s.h_bar = s.U * s.U * s.y_xi + 4.0 * Lt * Lt * F * g;
  s.h = s.h_bar - 2.0 * pb.cfg.alpha * c1 * c2 * hv.S_prime;
  // u_x = u - 2 p1~ e^{q1~ - x} with p1~ e^{q1~} = -Lt e^{d2 T} / em
  s.U_xi = s.U * s.y_xi + 2.0 * Lt * f2 * std::exp(-s.y) * em * g;
  return s;
}

std::pair<double, double> q_jump(const Problem& pb, double xi) {
  const HelperValues hv = helpers(pb, xi);
  const double before = pb.cfg.c1 * pb.cfg.c2 * hv.S;
  return {before, (1.0 - pb.cfg.alpha) * before};
}

LagrangianSample lagrangian_at(const Problem& pb, double t, double xi) {
  switch (branch_at(pb, t)) {
    case SolutionBranch::PreBreaking:
      return profile_pre(pb, t, xi);
    case SolutionBranch::AtBreaking:
      return profile_breaking(pb, xi);
    case SolutionBranch::PostOnePeakon:
      return profile_post_dissipative(pb, t, xi);
    case SolutionBranch::PostTwoPeakon:
      break;
  }
  return profile_post_general(pb, t, xi);
}

LagrangianProfile closed_form_profile(const Problem& pb, double t, const Eigen::ArrayXd& xi) {
  LagrangianProfile p(t, xi, {pb.xi1, pb.xi2});
  for (Eigen::Index i = 0; i < xi.size(); ++i) p.set(i, lagrangian_at(pb, t, xi(i)));
  return p;
}

}  // namespace peakon
