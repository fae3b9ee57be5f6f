#ifndef PEAKON_LAGRANGIAN_HPP_
#define PEAKON_LAGRANGIAN_HPP_

#include <utility>

#include "peakon/params.hpp"
#include "peakon/profile.hpp"

namespace peakon {

/// Auxiliary functions of the label on the collapsing interval [xi1, xi2].
struct HelperValues {
  double C = 0;
  double D = 0;
  double S = 0;        // rescaled post-collision Q, runs from -1 at xi1 to +1 at xi2
  double S_prime = 0;
};

/// Initial data with the identity as characteristic: y = xi at t = 0.
LagrangianSample initial_profile(const Problem& pb, double xi);

/// C, D, S, S'. Throws DomainError for xi outside [xi1, xi2].
HelperValues helpers(const Problem& pb, double xi);

/// Closed form for t < t0 (BranchError otherwise).
LagrangianSample profile_pre(const Problem& pb, double t, double xi);

/// Limit t -> t0. The middle interval sits at y = 0 with U = c1 + c2; h_bar
/// there is (1 - alpha) h, matching the atom that mu keeps at t0.
LagrangianSample profile_breaking(const Problem& pb, double xi);

/// alpha = 1, t > t0 (BranchError otherwise).
LagrangianSample profile_post_dissipative(const Problem& pb, double t, double xi);

/// alpha in [0, 1), t > t0 (BranchError otherwise).
LagrangianSample profile_post_general(const Problem& pb, double t, double xi);

/// (Q(t0-, xi), Q(t0+, xi)) on [xi1, xi2]; DomainError outside.
std::pair<double, double> q_jump(const Problem& pb, double xi);

/// Dispatches on t: pre, breaking (|t - t0| < kBreakingGuard), or post.
LagrangianSample lagrangian_at(const Problem& pb, double t, double xi);

/// Samples lagrangian_at on a label grid; kinks are {xi1, xi2}.
LagrangianProfile closed_form_profile(const Problem& pb, double t, const Eigen::ArrayXd& xi);

namespace detail {
/// The t < t0 formulas evaluated at any t, without the branch check.
LagrangianSample pre_formulas(const Problem& pb, double t, double xi);
}  // namespace detail

}  // namespace peakon

#endif  // PEAKON_LAGRANGIAN_HPP_
