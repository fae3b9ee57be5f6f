#ifndef PEAKON_MEASURES_HPP_
#define PEAKON_MEASURES_HPP_

#include <functional>
#include <span>
#include <vector>

#include "peakon/params.hpp"

namespace peakon {

struct Atom {
  double x = 0;
  double mass = 0;
};

/// Positive finite measure: piecewise smooth density plus finitely many atoms.
///
/// The density may have kinks or jumps only at the stored breakpoints.
/// Instances are immutable.
class Measure {
 public:
  using Density = std::function<double(double)>;

  Measure() = default;
  Measure(Density density, std::vector<double> breakpoints, std::vector<Atom> atoms);

  double density(double x) const { return density_ ? density_(x) : 0.0; }
  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const Atom> atoms() const { return atoms_; }

 private:
  Density density_;
  std::vector<double> breakpoints_;
  std::vector<Atom> atoms_;
};

/// u and u_x as callables of x at a fixed time.
struct EulerianField {
  std::function<double(double)> u;
  std::function<double(double)> ux;
};

/// (u, mu, nu) at one time.
struct EulerianState {
  double t = 0;
  EulerianField field;
  Measure mu;
  Measure nu;
};

/// Energy measure mu(t): u_x^2 dx, plus the atom at the origin at t0.
Measure mu_at(const Problem& pb, double t);

/// Bookkeeping measure nu(t).
///
/// nu = mu before t0; at t0 it carries the full concentrated energy -4c1c2;
/// afterwards it is u_x^2 dx plus the traveling atom (alpha = 1) or plus the
/// spread-out removed energy nu_m on (q1~, q2~) (alpha < 1).
Measure nu_at(const Problem& pb, double t);

/// Density of the removed energy between the two post-collision peaks.
///
/// Requires t > t0 and q1~(t) < x < q2~(t) (DomainError otherwise); zero for
/// alpha = 0; BranchError for alpha = 1.
double nu_m_density(const Problem& pb, double t, double x);

/// Density mass on [a, b] plus every atom in the closed interval.
double total_mass(const Measure& m, double a, double b);

/// Closed-form (u, mu, nu) at time t.
EulerianState eulerian_state(const Problem& pb, double t);

}  // namespace peakon

#endif  // PEAKON_MEASURES_HPP_
