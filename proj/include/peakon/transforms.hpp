#ifndef PEAKON_TRANSFORMS_HPP_
#define PEAKON_TRANSFORMS_HPP_

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "peakon/measures.hpp"
#include "peakon/profile.hpp"

namespace peakon {

/// nu((-inf, x)) for a Measure, with cumulative density mass cached on a
/// set of anchors so that each query costs one short quadrature.
class CumulativeMass {
 public:
  explicit CumulativeMass(const Measure& m);

  /// Mass of the open half-line (-inf, x).
  double below(double x) const;
  double total() const { return total_; }

 private:
  Measure m_;
  std::vector<double> anchors_;
  std::vector<double> at_anchor_;  // density mass on (-inf, anchor]
  double total_ = 0;
};

/// Labels at which L(u, mu, nu) has kinks: xi = x + nu((-inf, x)) at each
/// density breakpoint, and both ends of the label interval of every atom.
std::vector<double> lagrangian_kinks(const Measure& nu);

/// Plateau threshold: y_xi below this counts as zero.
inline constexpr double kPlateauThreshold = 1e-10;

/// The map L: (u, mu, nu) -> (y, U, y_xi, U_xi, h, h_bar) on the labels `xi`.
///
/// y(xi) = sup{ y | nu((-inf, y)) + y < xi }, found by bisection. Labels in
/// the jump across an atom map to the atom (y_xi = 0, h = 1, h_bar = mass
/// ratio); elsewhere y_xi = 1 / (1 + nu density) and h = 1 - y_xi.
LagrangianProfile to_lagrangian(const EulerianField& field, const Measure& mu,
                                const Measure& nu, const Eigen::ArrayXd& xi, double t = 0.0);

/// Result of the map M.
struct EulerianSamples {
  Eigen::ArrayXd x;
  Eigen::ArrayXd u;
  Measure mu;
  Measure nu;
};

/// The map M: u(y(xi)) = U(xi), mu = y#(h_bar dxi), nu = y#(h dxi).
///
/// Within a cell y and U are cubic Hermite interpolants, replaced on a cell
/// straddling a kink by the tangent lines of its two ends; the pushforward
/// densities are h / y' along the same interpolant. Runs of y_xi below
/// kPlateauThreshold over at least two cells with positive h-mass become atoms.
/// Throws DomainError for x outside [y(xi_0), y(xi_n)].
EulerianSamples to_eulerian(const LagrangianProfile& profile, const Eigen::ArrayXd& x);

struct RelabelCheckReport {
  struct Violation {
    double xi;
    std::string reason;
  };
  double min_slope = 0;          // min discrete slope of y + H
  double max_inverse = 0;        // max 1 / (y_xi + h)
  double max_compat_residual = 0;  // max |y_xi h_bar - U_xi^2| / (y_xi h_bar + U_xi^2)
  bool is_member = false;
  std::vector<Violation> violations;
};

/// Discrete membership test for the Lagrangian set.
///
/// Checks y_xi, h, h_bar >= 0, y_xi h_bar = U_xi^2 (1e-9 relative), h >= h_bar
/// (1e-12), and that y + H increases, H being the trapezoid primitive of h.
RelabelCheckReport check_F_membership(const LagrangianProfile& profile);

/// Increasing relabeling map with its derivative.
struct Relabeling {
  std::function<double(double)> g;
  std::function<double(double)> slope;
};

/// Composition with g.
///
/// The result lives on the labels g^{-1}(xi_i), so that y~(g^{-1}(xi_i)) =
/// y(xi_i) exactly; y_xi, U_xi, h, h_bar are multiplied by g'. Kinks are
/// mapped through g^{-1}. Throws MonotonicityError if g is not increasing.
LagrangianProfile relabel(const LagrangianProfile& profile, const Relabeling& g);

/// Removes the labels strictly inside (a, b) and shifts the labels beyond b
/// by a - b. Used to drop a collapsed interval that no longer carries energy.
LagrangianProfile squeeze(const LagrangianProfile& profile, double a, double b);

}  // namespace peakon

#endif  // PEAKON_TRANSFORMS_HPP_
