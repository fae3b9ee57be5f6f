#include "doctest.h"

#include <cmath>
#include <vector>

#include "peakon/errors.hpp"
#include "peakon/eulerian.hpp"
#include "peakon/grid.hpp"
#include "peakon/lagrangian.hpp"
#include "peakon/measures.hpp"
#include "peakon/transforms.hpp"
#include "support.hpp"

using namespace peakon;

namespace {
Problem with_alpha(double a) { return Problem(make_config(0.8, -2.0, 1.0, a)); }

LagrangianProfile lagrangian_of(const Problem& pb, double t, Index n = 2000) {
  const EulerianState s = eulerian_state(pb, t);
  const std::vector<double> kinks = lagrangian_kinks(s.nu);
  const double total = CumulativeMass(s.nu).total();
  return to_lagrangian(s.field, s.mu, s.nu, make_xi_grid(-20, 20 + total, n, kinks), t);
}
}  // namespace

TEST_CASE("CumulativeMass counts atoms on the open half-line") {
  const Problem pb = reference_problem();
  const Measure nu = nu_at(pb, 1.0);
  const CumulativeMass cm(nu);
  CHECK(std::abs(cm.total() - 7.84) < 1e-8);
  CHECK(cm.below(0.0) == doctest::Approx(0.5 * (7.84 - 6.4)).epsilon(1e-9));
  CHECK(cm.below(1e-12) == doctest::Approx(0.5 * (7.84 - 6.4) + 6.4).epsilon(1e-9));
  CHECK(cm.below(-50.0) < 1e-15);
}

TEST_CASE("to_lagrangian inverts y + nu((-inf, y))") {
  const Problem pb = reference_problem();
  const EulerianState s = eulerian_state(pb, 0.0);
  const Eigen::ArrayXd xi = Eigen::ArrayXd::LinSpaced(41, -5.0, 5.0);
  const LagrangianProfile p = to_lagrangian(s.field, s.mu, s.nu, xi);
  for (Index i = 0; i < xi.size(); ++i) {
    CHECK(p.y(i) + CumulativeMass(s.nu).below(p.y(i)) == doctest::Approx(xi(i)).epsilon(1e-12));
    CHECK(std::abs(p.U(i) - eval_u(pb, 0.0, p.y(i))) < 1e-12);
    CHECK(std::abs(p.y_xi(i) + p.h(i) - 1.0) < 1e-12);
  }
}

TEST_CASE("atoms become plateaus") {
  const Problem pb = reference_problem();
  const LagrangianProfile p = lagrangian_of(pb, 1.0);
  const std::vector<double> kinks = p.kinks;
  REQUIRE(kinks.size() >= 2);
  int plateau = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p.y_xi(i) == 0.0) {
      ++plateau;
      CHECK(p.y(i) == 0.0);
      CHECK(p.h(i) == 1.0);
      CHECK(p.h_bar(i) == doctest::Approx(0.5));
    }
  }
  CHECK(plateau > 100);
  CHECK(check_F_membership(p).is_member);
}

TEST_CASE("M o L reproduces u and the measures") {
  for (double t : {0.0, 1.0, 2.0}) {
    const Problem pb = reference_problem();
    const EulerianState s = eulerian_state(pb, t);
    const LagrangianProfile p = lagrangian_of(pb, t);
    const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(201, -5.0, 5.0);
    const EulerianSamples e = to_eulerian(p, x);
    double worst = 0.0;
    for (Index i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(e.u(i) - s.field.u(x(i))));
    CHECK(worst < 1e-8);
    for (double a : {-3.0, -0.5, 0.0, 0.4}) {
      CHECK(std::abs(total_mass(e.nu, a, a + 1.3) - total_mass(s.nu, a, a + 1.3)) < 1e-6);
      CHECK(std::abs(total_mass(e.mu, a, a + 1.3) - total_mass(s.mu, a, a + 1.3)) < 1e-6);
    }
  }
}

TEST_CASE("to_eulerian rejects points outside the image") {
  const LagrangianProfile p = lagrangian_of(reference_problem(), 0.0, 400);
  Eigen::ArrayXd x(1);
  x << 1e3;
  CHECK_THROWS_AS(to_eulerian(p, x), DomainError);
}

TEST_CASE("relabeling leaves the Eulerian image unchanged") {
  const Problem pb = reference_problem();
  const LagrangianProfile p = lagrangian_of(pb, 0.0);
  const Relabeling g{[](double s) { return s + 0.3 * std::sin(s); },
                     [](double s) { return 1.0 + 0.3 * std::cos(s); }};
  const LagrangianProfile q = relabel(p, g);
  CHECK(check_F_membership(q).is_member);
  const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(101, -4.0, 4.0);
  const EulerianSamples a = to_eulerian(p, x), b = to_eulerian(q, x);
  CHECK((a.u - b.u).abs().maxCoeff() < 1e-7);
  const Relabeling bad{[](double s) { return s - 2.0 * std::sin(s); },
                       [](double s) { return 1.0 - 2.0 * std::cos(s); }};
  CHECK_THROWS_AS(relabel(p, bad), MonotonicityError);
}

TEST_CASE("membership check flags a broken profile") {
  LagrangianProfile p = lagrangian_of(reference_problem(), 0.0, 200);
  p.h_bar(50) = p.h(50) + 1.0;
  const RelabelCheckReport r = check_F_membership(p);
  CHECK_FALSE(r.is_member);
  CHECK_FALSE(r.violations.empty());
}

TEST_CASE("squeeze removes a label interval") {
  const Eigen::ArrayXd xi = Eigen::ArrayXd::LinSpaced(11, 0.0, 10.0);
  LagrangianProfile p(0.0, xi, {2.5, 7.5});
  p.y = xi;
  const LagrangianProfile q = squeeze(p, 3.0, 6.0);
  // label 6 lands on the kept label 3 and is dropped
  REQUIRE(q.size() == 8);
  CHECK(q.xi(3) == 3.0);
  CHECK(q.y(3) == 3.0);
  CHECK(q.xi(4) == 4.0);
  CHECK(q.y(4) == 7.0);
  REQUIRE(q.kinks.size() == 2);
  CHECK(q.kinks[1] == 4.5);
  CHECK_THROWS_AS(squeeze(p, 5.0, 4.0), DomainError);
}

TEST_CASE("dissipative continuation: squeezed profile is a single peakon") {
  const Problem pb = with_alpha(1.0);
  const double t = 2.0, s = pb.sum();
  const LagrangianProfile p = testing::arclength_profile(pb, t, -10, 10, 2000);
  CHECK(check_F_membership(p).is_member);
  const LagrangianProfile q = squeeze(p, p.kinks[0], p.kinks[1]);
  const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(161, -6.0, 2.0);
  const EulerianSamples e = to_eulerian(q, x);
  double worst = 0.0;
  for (Index i = 0; i < x.size(); ++i)
    worst = std::max(worst, std::abs(e.u(i) - s * std::exp(-std::abs(x(i) - s * (t - 1.0)))));
  CHECK(worst < 1e-8);
  const EulerianSamples full = to_eulerian(p, x);
  REQUIRE(full.nu.atoms().size() == 1);
  CHECK(std::abs(full.nu.atoms()[0].x - s * (t - 1.0)) < 1e-6);
  CHECK(std::abs(full.nu.atoms()[0].mass - 6.4) < 1e-6);
}
