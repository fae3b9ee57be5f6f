#include "doctest.h"

#include <cmath>
#include <vector>

#include "peakon/errors.hpp"
#include "peakon/grid.hpp"
#include "peakon/lagrangian.hpp"
#include "peakon/oracle.hpp"

using namespace peakon;

namespace {
Problem with_alpha(double a) { return Problem(make_config(0.8, -2.0, 1.0, a)); }

LagrangianProfile gaussian(Index n) {
  const Eigen::ArrayXd xi = Eigen::ArrayXd::LinSpaced(n, -10.0, 10.0);
  LagrangianProfile p(0.0, xi, {});
  p.y = xi;
  p.y_xi.setOnes();
  p.U = (-xi.square()).exp();
  p.U_xi = -2.0 * xi * p.U;
  p.h = p.U_xi.square();
  p.h_bar = p.h;
  return p;
}
}  // namespace

TEST_CASE("P is even and Q odd for symmetric data") {
  const LagrangianProfile p = gaussian(401);
  const PQField pq = compute_pq(p, false);
  const Index n = p.size();
  for (Index i = 0; i < n; ++i) {
    CHECK(std::abs(pq.P(i) - pq.P(n - 1 - i)) < 1e-10);
    CHECK(std::abs(pq.Q(i) + pq.Q(n - 1 - i)) < 1e-10);
    CHECK(pq.P(i) >= 0.0);
  }
}

TEST_CASE("P and Q of a single peakon") {
  // u = e^{-|x|} with y = xi: P - Q_x = u^2 + u_x^2 / 2 away from the peak
  const Eigen::ArrayXd xi = make_xi_grid(-20, 20, 4000, std::vector<double>{0.0});
  LagrangianProfile p(0.0, xi, {0.0});
  p.y = xi;
  p.y_xi.setOnes();
  p.U = (-xi.abs()).exp();
  p.U_xi = -xi.sign() * p.U;
  p.h = p.U_xi.square();
  p.h_bar = p.h;
  const PQField pq = compute_pq(p, false);
  const XiGrid g(xi, {0.0});
  for (double x : {-2.0, -0.7, 0.9, 3.0}) {
    const Index c = g.cell_of(x);
    const double m = 0.5 * (xi(c) + xi(c + 1));
    const double dq = (pq.Q(c + 1) - pq.Q(c)) / (xi(c + 1) - xi(c));
    const double u = std::exp(-std::abs(m));
    CHECK(std::abs(g.interpolate(pq.P, m) - dq - 1.5 * u * u) < 1e-4);
  }
}

TEST_CASE("pre-breaking leg matches the closed form") {
  const Problem pb = reference_problem();
  LegSpec spec;
  spec.t_start = 0.0;
  spec.t_end = 0.5;
  spec.nodes = 1000;
  const LegReport r = run_leg(pb, spec);
  CHECK(r.max_err_y < 1e-4);
  CHECK(r.max_err_U < 1e-4);
  CHECK(r.energy_drift < 1e-5);
  CHECK(r.steps == 500);
  CHECK(r.final_state.t == doctest::Approx(0.5));
}

TEST_CASE("post-breaking legs match the closed form") {
  for (double a : {0.0, 1.0}) {
    const Problem pb = with_alpha(a);
    LegSpec spec;
    spec.t_start = 1.0;
    spec.t_end = 1.3;
    spec.check_from = 1.05;
    const LegReport r = run_leg(pb, spec);
    CHECK(r.max_err_y < 1e-4);
    CHECK(r.max_err_U < 1e-4);
  }
}

TEST_CASE("leg start is restricted") {
  LegSpec spec;
  spec.t_start = 0.5;
  spec.t_end = 0.9;
  CHECK_THROWS_AS(run_leg(reference_problem(), spec), DomainError);
}

TEST_CASE("energy removal at the collision") {
  const Problem pb = reference_problem();
  const Eigen::ArrayXd xi = oracle_grid(pb, LegSpec{});
  const LagrangianProfile lim = breaking_limit(pb, xi);
  CHECK((lim.h - lim.h_bar).abs().maxCoeff() == 0.0);
  const LagrangianProfile after = apply_breaking(lim, 0.5);
  CHECK((after.h - lim.h).abs().maxCoeff() == 0.0);
  const XiGrid g(xi, lim.kinks);
  CHECK(std::abs(g.integrate(lim.h_bar - after.h_bar) - 3.2) < 1e-6);
  CHECK_THROWS_AS(apply_breaking(closed_form_profile(pb, 0.0, xi), 0.5), NoBreakingError);
}

TEST_CASE("reduced z-V system keeps the origin fixed") {
  const Problem pb = reference_problem();
  const auto [z, v] = reduced_zv_integrate(pb, 0.0, 0.0, 2.0, 1e-3);
  CHECK(z == 0.0);
  CHECK(v == 0.0);
  const auto [z1, v1] = reduced_zv_integrate(pb, 0.0, 0.5, 1.5, 1e-3);
  CHECK(std::isfinite(z1));
  CHECK(std::isfinite(v1));
}

TEST_CASE("step rejects blow-up") {
  LagrangianProfile p = gaussian(101);
  p.U(50) = 1e13;
  const PQField pq = compute_pq(p, false);
  CHECK_THROWS_AS(step(p, pq, 1e-3, false), BlowupError);
}
