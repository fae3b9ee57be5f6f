#ifndef PEAKON_ORACLE_HPP_
#define PEAKON_ORACLE_HPP_

#include <functional>
#include <utility>

#include <Eigen/Core>

#include "peakon/grid.hpp"
#include "peakon/params.hpp"
#include "peakon/profile.hpp"

namespace peakon {

/// Nonlocal terms on the label grid.
struct PQField {
  Eigen::ArrayXd P;
  Eigen::ArrayXd Q;
};

enum class Scheme { RK4 };

struct IntegratorSettings {
  double dt = 1e-3;
  Scheme scheme = Scheme::RK4;
  double breaking_guard = 0.05;  // half-width of the window around t0 left to the closed form
};

/// P = 1/4 int e^{-|y(xi)-y(eta)|} w deta and
/// Q = -1/4 int sgn(xi-eta) e^{-|y(xi)-y(eta)|} w deta, with w = 2U^2 y_xi + h
/// (or h_bar when use_hbar). Since y is nondecreasing the kernel factors into
/// e^{-y(xi)} e^{y(eta)} and e^{y(xi)} e^{-y(eta)}, so both are prefix sums
/// of the grid quadrature.
PQField compute_pq(const LagrangianProfile& p, const XiGrid& grid, bool use_hbar);
PQField compute_pq(const LagrangianProfile& p, bool use_hbar);

/// One classical RK4 step of
///   y_t = U, U_t = -Q, y_xi,t = U_xi, U_xi,t = f/2 + (U^2 - P) y_xi,
///   h_t = h_bar,t = 2 (U^2 - P) U_xi,
/// with f = h, or h_bar everywhere when use_hbar. `pq` is the field at the
/// current state; later stages recompute it. Throws BlowupError if a field
/// leaves [-1e12, 1e12].
LagrangianProfile step(const LagrangianProfile& p, const XiGrid& grid, const PQField& pq,
                       double dt, bool use_hbar);
LagrangianProfile step(const LagrangianProfile& p, const PQField& pq, double dt,
                       bool use_hbar);

/// Called after every accepted step.
using StepObserver = std::function<void(const LagrangianProfile&)>;

/// Steps from p.t to t_end with fixed dt (the last step is shortened).
LagrangianProfile integrate(const LagrangianProfile& p, double t_end, double dt, bool use_hbar,
                            const StepObserver& observe = {});

/// The left limit of the Lagrangian state at t0: the collision profile with
/// h_bar = h.
LagrangianProfile breaking_limit(const Problem& pb, const Eigen::ArrayXd& xi);

/// Sets h_bar = (1 - alpha) h on the nodes where y_xi <= kPlateauThreshold.
/// Throws NoBreakingError if there are none.
LagrangianProfile apply_breaking(const LagrangianProfile& p, double alpha);

/// z_t = V, V_t = -sgn(z) V (V + c1 + c2) from t0 to t_end by RK4, sgn(z)
/// frozen over each step and sgn(0) = 0. Returns (z, V) at t_end.
std::pair<double, double> reduced_zv_integrate(const Problem& pb, double z0, double v0,
                                               double t_end, double dt);

/// Oracle run against the closed forms on [t_start, t_end].
struct LegSpec {
  double t_start = 0;
  double t_end = 0;
  double check_from = 0;  // errors are measured at step times >= check_from
  double dt = 1e-3;
  Index nodes = 2000;
  double xi_lo = -20;
  double xi_hi = 20;
  double grid_ratio = 0.93;
};

struct LegReport {
  double max_err_y = 0;
  double max_err_U = 0;
  double energy_drift = 0;  // max relative change of int (U^2 y_xi + h_bar)
  Index steps = 0;
  LagrangianProfile final_state;
};

/// Starts from initial_profile when t_start = 0 < t0, or from
/// apply_breaking(breaking_limit) when t_start = t0; integrates with h_bar on
/// the right-hand side after t0.
LegReport run_leg(const Problem& pb, const LegSpec& spec);

/// ||a - b|| / ||b - c|| for three runs at dt, dt/2, dt/4 (sup norm over y and U
/// at t_end).
double richardson_ratio(const Problem& pb, LegSpec spec);

/// Label grid used by the oracle: clustered at the ends of the collapsing interval.
Eigen::ArrayXd oracle_grid(const Problem& pb, const LegSpec& spec);

}  // namespace peakon

#endif  // PEAKON_ORACLE_HPP_
