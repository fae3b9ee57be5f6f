#include "doctest.h"

#include <cmath>

#include "peakon/errors.hpp"
#include "peakon/eulerian.hpp"
#include "peakon/lagrangian.hpp"
#include "peakon/quadrature.hpp"

using namespace peakon;

namespace {
Problem with_alpha(double a) { return Problem(make_config(0.8, -2.0, 1.0, a)); }

double compat(const LagrangianSample& s) {
  const double scale = s.y_xi * s.h_bar + s.U_xi * s.U_xi;
  return scale > 0 ? std::abs(s.y_xi * s.h_bar - s.U_xi * s.U_xi) / scale : 0.0;
}
}  // namespace

TEST_CASE("initial profile is the identity characteristic") {
  const Problem pb = reference_problem();
  const LagrangianSample s = initial_profile(pb, pb.xi1);
  CHECK(s.y == pb.xi1);
  CHECK(s.y_xi == 1.0);
  CHECK(s.U == doctest::Approx(0.4305024799575800).epsilon(1e-13));
  const LagrangianSample m = initial_profile(pb, 1.0);
  CHECK(m.U == doctest::Approx(eval_u(pb, 0.0, 1.0)).epsilon(1e-14));
  CHECK(m.h == doctest::Approx(std::pow(eval_ux(pb, 0.0, 1.0), 2)).epsilon(1e-13));
  CHECK(m.h == m.h_bar);
}

TEST_CASE("helpers on the collapsing interval") {
  const Problem pb = reference_problem();
  CHECK(helpers(pb, pb.xi1).S == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(helpers(pb, pb.xi2).S == doctest::Approx(1.0).epsilon(1e-12));
  double prev = -2.0;
  for (double xi = pb.xi1; xi <= pb.xi2; xi += 0.01) {
    const HelperValues hv = helpers(pb, xi);
    CHECK(hv.S > prev);
    CHECK(hv.S_prime > 0.0);
    prev = hv.S;
  }
  const double total = quadrature::integrate([&](double xi) { return helpers(pb, xi).S_prime; },
                                             pb.xi1, pb.xi2);
  CHECK(std::abs(total - 2.0) < 1e-10);
  CHECK_THROWS_AS(helpers(pb, pb.xi1 - 0.01), DomainError);
  CHECK_THROWS_AS(helpers(pb, pb.xi2 + 0.01), DomainError);
}

TEST_CASE("branch checks") {
  const Problem pb = reference_problem();
  CHECK_THROWS_AS(profile_pre(pb, 1.5, 0.5), BranchError);
  CHECK_THROWS_AS(profile_post_general(pb, 0.5, 0.5), BranchError);
  CHECK_THROWS_AS(profile_post_general(with_alpha(1.0), 1.5, 0.5), BranchError);
  CHECK_THROWS_AS(profile_post_dissipative(pb, 1.5, 0.5), BranchError);
}

TEST_CASE("composition with the Eulerian solution") {
  for (double a : {0.0, 0.5, 1.0}) {
    const Problem pb = with_alpha(a);
    for (double t : {0.0, 0.5, 1.5, 3.0}) {
      for (double xi = -3.0; xi <= 4.0; xi += 0.0701) {
        const LagrangianSample s = lagrangian_at(pb, t, xi);
        CHECK(std::abs(eval_u(pb, t, s.y) - s.U) < 1e-8);
      }
    }
  }
}

TEST_CASE("compatibility and domination on every branch") {
  for (double a : {0.0, 0.5, 1.0}) {
    const Problem pb = with_alpha(a);
    for (double t : {0.3, 0.999, 1.0, 1.001, 2.5}) {
      for (double xi = -3.0; xi <= 4.0; xi += 0.0503) {
        const LagrangianSample s = lagrangian_at(pb, t, xi);
        CHECK(compat(s) < 1e-9);
        CHECK(s.h >= s.h_bar - 1e-12);
        CHECK(s.y_xi >= 0.0);
      }
    }
  }
}

TEST_CASE("characteristics are continuous through the collision") {
  const Problem pb = reference_problem();
  for (double xi : {-1.0, 0.6, 1.0, 1.4, 3.0}) {
    const LagrangianSample before = lagrangian_at(pb, 1.0 - 1e-7, xi);
    const LagrangianSample at = lagrangian_at(pb, 1.0, xi);
    const LagrangianSample after = lagrangian_at(pb, 1.0 + 1e-7, xi);
    CHECK(std::abs(before.y - at.y) < 1e-6);
    CHECK(std::abs(after.y - at.y) < 1e-6);
    CHECK(std::abs(before.U - at.U) < 1e-6);
    CHECK(std::abs(after.U - at.U) < 1e-6);
  }
  const LagrangianSample mid = profile_breaking(pb, 1.0);
  CHECK(mid.y == 0.0);
  CHECK(mid.y_xi == 0.0);
  CHECK(mid.U == doctest::Approx(-1.2));
  CHECK(mid.h_bar == doctest::Approx(0.5 * mid.h).epsilon(1e-14));
}

TEST_CASE("collapsed interval carries the concentrated energy") {
  const Problem pb = reference_problem();
  const double e = quadrature::integrate([&](double xi) { return profile_breaking(pb, xi).h; },
                                         pb.xi1, pb.xi2);
  CHECK(std::abs(e - 6.4) < 1e-8);
}

TEST_CASE("Q jumps by the factor 1 - alpha") {
  const Problem pb = reference_problem();
  for (double xi = pb.xi1; xi <= pb.xi2; xi += 0.05) {
    const auto [before, after] = q_jump(pb, xi);
    const double S = helpers(pb, xi).S;
    CHECK(before == doctest::Approx(-1.6 * S));
    CHECK(std::abs(after - pb.k.d1 * pb.k.d2 * S) < 1e-12);
  }
  CHECK_THROWS_AS(q_jump(pb, 3.0), DomainError);
}

TEST_CASE("conservative continuation equals the pre formulas") {
  const Problem pb = with_alpha(0.0);
  for (double xi = -2.0; xi <= 3.0; xi += 0.173) {
    const LagrangianSample a = profile_post_general(pb, 2.0, xi);
    const LagrangianSample b = detail::pre_formulas(pb, 2.0, xi);
    CHECK(std::abs(a.y - b.y) < 1e-12);
    CHECK(std::abs(a.U - b.U) < 1e-12);
    CHECK(std::abs(a.h - b.h) < 1e-12);
    CHECK(a.h == a.h_bar);
  }
}

TEST_CASE("closed_form_profile samples lagrangian_at") {
  const Problem pb = reference_problem();
  const Eigen::ArrayXd xi = Eigen::ArrayXd::LinSpaced(7, -1.0, 2.0);
  const LagrangianProfile p = closed_form_profile(pb, 1.5, xi);
  REQUIRE(p.kinks.size() == 2);
  CHECK(p.kinks[0] == pb.xi1);
  CHECK(p.t == 1.5);
  for (Eigen::Index i = 0; i < xi.size(); ++i) CHECK(p.y(i) == lagrangian_at(pb, 1.5, xi(i)).y);
}
