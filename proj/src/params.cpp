#include "peakon/params.hpp"

#include <cmath>
#include <sstream>

#include "peakon/errors.hpp"

namespace peakon {

Config make_config(double c1, double c2, double t0, double alpha) {
  if (!std::isfinite(c1) || !std::isfinite(c2) || !(c1 > 0.0 && c2 < 0.0)) {
    std::ostringstream os;
    os << "expected c1 > 0 > c2, got c1=" << c1 << " c2=" << c2;
    throw SignError(os.str());
  }
  if (!std::isfinite(t0) || !(t0 > 0.0)) {
    std::ostringstream os;
    os << "breaking time must be positive, got t0=" << t0;
    throw RangeError(os.str());
  }
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
    std::ostringstream os;
    os << "alpha must lie in [0,1], got " << alpha;
    throw RangeError(os.str());
  }
  // For alpha = 1 the continuation would be u = 0; rejected as well.
  if (std::abs(c1 + c2) < kSymmetricTolerance) {
    throw SymmetricCaseError("c1 + c2 = 0 (complete annihilation) is not supported");
  }
  return Config{c1, c2, t0, alpha};
}

DerivedConstants derive(const Config& cfg) {
  DerivedConstants k;
  const double s = cfg.c1 + cfg.c2;
  const double prod = (1.0 - cfg.alpha) * cfg.c1 * cfg.c2;  // <= 0
  const double root = std::sqrt(0.25 * s * s - prod);
  // Take the root without cancellation and recover the other from the product.
  if (s >= 0.0) {
    k.d1 = 0.5 * s + root;
    k.d2 = prod / k.d1;
  } else {
    k.d2 = 0.5 * s - root;
    k.d1 = prod / k.d2;
  }
  if (cfg.alpha == 0.0) {
    k.d1 = cfg.c1;
    k.d2 = cfg.c2;
  }
  k.L = cfg.c1 - cfg.c2;
  k.Ltilde = k.d1 - k.d2;
  k.E2 = 2.0 * (cfg.c1 * cfg.c1 + cfg.c2 * cfg.c2);
  k.E2tilde = 2.0 * (k.d1 * k.d1 + k.d2 * k.d2);
  return k;
}

Problem::Problem(const Config& c)
    : cfg(make_config(c.c1, c.c2, c.t0, c.alpha)), k(derive(cfg)) {
  const double c1 = cfg.c1, c2 = cfg.c2, t0 = cfg.t0, L = k.L;
  const double e = std::exp(-L * t0);
  xi1 = std::log(L) - c1 * t0 - std::log(c1 - c2 * e);
  xi2 = -std::log(L) - c2 * t0 + std::log(c1 * e - c2);
}

Problem reference_problem() { return Problem(Config{0.8, -2.0, 1.0, 0.5}); }

}  // namespace peakon
