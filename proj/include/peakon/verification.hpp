#ifndef PEAKON_VERIFICATION_HPP_
#define PEAKON_VERIFICATION_HPP_

#include <string>
#include <vector>

#include "peakon/params.hpp"

namespace peakon {

/// One invariant evaluated at one configuration.
struct Check {
  std::string suite;
  std::string name;
  double measured = 0;   // residual, or the measured quantity for range checks
  double tolerance = 0;
  bool passed = false;
};

struct VerifyOptions {
  bool include_oracle = true;  // the oracle suite integrates several ODE legs
  int oracle_nodes = 2000;
};

/// Runs the invariant suites of every module (params, eulerian, measures,
/// lagrangian, transforms, oracle) at `pb`. Invariants that only make sense
/// for a particular alpha are evaluated at (c1, c2, t0) with that alpha.
std::vector<Check> verify_all(const Problem& pb, const VerifyOptions& opt = {});

}  // namespace peakon

#endif  // PEAKON_VERIFICATION_HPP_
