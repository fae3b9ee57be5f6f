#ifndef PEAKON_PARAMS_HPP_
#define PEAKON_PARAMS_HPP_

namespace peakon {

/// The four user-facing scalars of a peakon-antipeakon collision.
///
/// `c1 > 0` is the asymptotic peakon speed, `c2 < 0` the antipeakon speed,
/// `t0 > 0` the time at which the pair collides at the origin and `alpha`
/// the fraction of the concentrated energy removed at the collision.
struct Config {
  double c1 = 0.8;
  double c2 = -2.0;
  double t0 = 1.0;
  double alpha = 0.5;
};

/// Constants shared by every solution formula.
struct DerivedConstants {
  double L = 0;       // c1 - c2
  double d1 = 0;      // post-collision speeds, roots of
  double d2 = 0;      //   x^2 - (c1+c2) x + (1-alpha) c1 c2
  double Ltilde = 0;  // d1 - d2
  double E2 = 0;      // H1 energy before the collision, 2c1^2 + 2c2^2
  double E2tilde = 0; // H1 energy after the collision, 2d1^2 + 2d2^2
};

/// |c1 + c2| below this is treated as the excluded symmetric collision.
inline constexpr double kSymmetricTolerance = 1e-12;

/// Validates raw input. Throws SignError, RangeError or SymmetricCaseError.
Config make_config(double c1, double c2, double t0, double alpha);

DerivedConstants derive(const Config& cfg);

/// A validated configuration together with its derived constants.
///
/// Everything downstream takes a `Problem`; nothing recomputes the square
/// root of the d1/d2 quadratic.
struct Problem {
  explicit Problem(const Config& cfg);

  Config cfg;
  DerivedConstants k;
  double xi1 = 0;  // q1(0): left end of the label interval that collapses at t0
  double xi2 = 0;  // q2(0): right end

  double sum() const { return cfg.c1 + cfg.c2; }
  bool dissipative() const { return cfg.alpha == 1.0; }
};

/// The parameter set used in the figures: (0.8, -2.0, 1.0, 0.5).
Problem reference_problem();

}  // namespace peakon

#endif  // PEAKON_PARAMS_HPP_
