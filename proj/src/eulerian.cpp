#include "peakon/eulerian.hpp"

#include <cmath>
#include <sstream>

#include "peakon/errors.hpp"

namespace peakon {
namespace {

bool near_breaking(const Problem& pb, double t) {
  return std::abs(t - pb.cfg.t0) < kBreakingGuard;
}

void require_pair_branch(const Problem& pb, double t) {
  if (near_breaking(pb, t)) {
    std::ostringstream os;
    os << "pair parameters are singular at t0 (t=" << t << ")";
    throw AtBreakingError(os.str());
  }
  if (t > pb.cfg.t0 && pb.dissipative()) {
    throw BranchError("alpha = 1 continues as a single peakon after t0");
  }
}

}  // namespace

SolutionBranch branch_at(const Problem& pb, double t) {
  if (near_breaking(pb, t)) return SolutionBranch::AtBreaking;
  if (t < pb.cfg.t0) return SolutionBranch::PreBreaking;
  return pb.dissipative() ? SolutionBranch::PostOnePeakon : SolutionBranch::PostTwoPeakon;
}

PeakonPair trajectories(const Problem& pb, double t) {
  require_pair_branch(pb, t);
  const double T = t - pb.cfg.t0;
  PeakonPair pp;
  pp.t = t;
  if (T < 0.0) {
    const double c1 = pb.cfg.c1, c2 = pb.cfg.c2, L = pb.k.L;
    const double E = std::exp(L * T);
    const double den = -std::expm1(L * T);  // 1 - e^{L(t-t0)}
    pp.p1 = (c1 - c2 * E) / den;
    pp.p2 = (c2 - c1 * E) / den;
    pp.q1 = std::log(L) + c1 * T - std::log(c1 - c2 * E);
    pp.q2 = -std::log(L) + c2 * T + std::log(c1 * E - c2);
  } else {
    const double d1 = pb.k.d1, d2 = pb.k.d2, Lt = pb.k.Ltilde;
    const double F = std::exp(-Lt * T);
    const double den = -std::expm1(-Lt * T);
    pp.p1 = (d2 - d1 * F) / den;
    pp.p2 = (d1 - d2 * F) / den;
    pp.q1 = std::log(Lt) + d2 * T - std::log(d1 * F - d2);
    pp.q2 = -std::log(Lt) + d1 * T + std::log(d1 - d2 * F);
  }
  return pp;
}

PairShape pair_shape(const Problem& pb, double t) {
  const PeakonPair pp = trajectories(pb, t);
  const double T = t - pb.cfg.t0;
  PairShape sh;
  sh.q1 = pp.q1;
  sh.q2 = pp.q2;
  if (T < 0.0) {
    const double c1 = pb.cfg.c1, c2 = pb.cfg.c2, L = pb.k.L;
    const double den = -std::expm1(L * T);
    sh.left_amp = (c1 * c1 * std::exp(-c1 * T) - c2 * c2 * std::exp(-c2 * T)) / L;
    sh.right_amp = (c1 * c1 * std::exp(c1 * T) - c2 * c2 * std::exp(c2 * T)) / L;
    sh.a1 = L * std::exp(c1 * T) / den;
    sh.b2 = -L * std::exp(-c2 * T) / den;
  } else {
    const double d1 = pb.k.d1, d2 = pb.k.d2, Lt = pb.k.Ltilde;
    const double den = -std::expm1(-Lt * T);
    sh.left_amp = (d1 * d1 * std::exp(-d1 * T) - d2 * d2 * std::exp(-d2 * T)) / Lt;
    sh.right_amp = (d1 * d1 * std::exp(d1 * T) - d2 * d2 * std::exp(d2 * T)) / Lt;
    sh.a1 = -Lt * std::exp(d2 * T) / den;
    sh.b2 = Lt * std::exp(-d1 * T) / den;
  }
  return sh;
}

double eval_u(const Problem& pb, double t, double x) {
  switch (branch_at(pb, t)) {
    case SolutionBranch::AtBreaking:
      return pb.sum() * std::exp(-std::abs(x));
    case SolutionBranch::PostOnePeakon:
      return pb.sum() * std::exp(-std::abs(x - one_peakon_position(pb, t)));
    default:
      break;
  }
  const PairShape sh = pair_shape(pb, t);
  if (x <= sh.q1) return sh.left_amp * std::exp(x);
  if (x >= sh.q2) return sh.right_amp * std::exp(-x);
  return sh.a1 * std::exp(-x) + sh.b2 * std::exp(x);
}

double eval_ux(const Problem& pb, double t, double x) {
  switch (branch_at(pb, t)) {
    case SolutionBranch::AtBreaking:
      return x <= 0.0 ? pb.sum() * std::exp(x) : -pb.sum() * std::exp(-x);
    case SolutionBranch::PostOnePeakon: {
      const double z = x - one_peakon_position(pb, t);
      return z <= 0.0 ? pb.sum() * std::exp(z) : -pb.sum() * std::exp(-z);
    }
    default:
      break;
  }
  const PairShape sh = pair_shape(pb, t);
  if (x <= sh.q1) return sh.left_amp * std::exp(x);
  if (x > sh.q2) return -sh.right_amp * std::exp(-x);
  return -sh.a1 * std::exp(-x) + sh.b2 * std::exp(x);
}

double energy(const Problem& pb, double t) {
  switch (branch_at(pb, t)) {
    case SolutionBranch::PreBreaking:
      return pb.k.E2;
    case SolutionBranch::PostTwoPeakon:
      return pb.k.E2tilde;
    default:
      return 2.0 * pb.sum() * pb.sum();
  }
}

}  // namespace peakon
