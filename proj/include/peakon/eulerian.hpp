#ifndef PEAKON_EULERIAN_HPP_
#define PEAKON_EULERIAN_HPP_

#include "peakon/params.hpp"

namespace peakon {

/// Heights and positions of the two peaks at time t.
struct PeakonPair {
  double p1 = 0;
  double p2 = 0;
  double q1 = 0;
  double q2 = 0;
  double t = 0;
};

enum class SolutionBranch { PreBreaking, AtBreaking, PostTwoPeakon, PostOnePeakon };

/// Within this distance of t0 the pair parameters are not evaluated and the
/// collision profile (c1+c2) e^{-|x|} is used instead.
inline constexpr double kBreakingGuard = 1e-9;

SolutionBranch branch_at(const Problem& pb, double t);

/// Pair parameters of the active two-peakon branch.
///
/// Throws AtBreakingError for |t - t0| < kBreakingGuard (the heights blow up
/// there) and BranchError for t > t0 when alpha = 1.
PeakonPair trajectories(const Problem& pb, double t);

/// Cancellation-free description of a two-peakon profile:
///   u = left_amp e^{x}                  for x <= q1,
///   u = a1 e^{-x} + b2 e^{x}            for q1 < x < q2,
///   u = right_amp e^{-x}                for x >= q2,
/// with a1 = p1 e^{q1}, b2 = p2 e^{-q2}.
struct PairShape {
  double q1 = 0;
  double q2 = 0;
  double left_amp = 0;
  double right_amp = 0;
  double a1 = 0;
  double b2 = 0;
};

/// Same domain and errors as trajectories().
PairShape pair_shape(const Problem& pb, double t);

/// u(t, x) on every branch. Total in (t, x).
double eval_u(const Problem& pb, double t, double x);

/// Spatial derivative; at a peak the left derivative is returned.
double eval_ux(const Problem& pb, double t, double x);

/// Closed-form  \int (u^2 + u_x^2) dx  of the function u(t, .).
double energy(const Problem& pb, double t);

/// Position of the single peak for alpha = 1 and t > t0.
inline double one_peakon_position(const Problem& pb, double t) {
  return pb.sum() * (t - pb.cfg.t0);
}

}  // namespace peakon

#endif  // PEAKON_EULERIAN_HPP_
