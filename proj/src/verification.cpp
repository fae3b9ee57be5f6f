#include "peakon/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "peakon/errors.hpp"
#include "peakon/eulerian.hpp"
#include "peakon/grid.hpp"
#include "peakon/lagrangian.hpp"
#include "peakon/measures.hpp"
#include "peakon/oracle.hpp"
#include "peakon/quadrature.hpp"
#include "peakon/transforms.hpp"

namespace peakon {
namespace {

constexpr double kWindow = 40.0;

class Report {
 public:
  explicit Report(std::vector<Check>& out) : out_(out) {}
  void suite(std::string name) { suite_ = std::move(name); }
  // Passes when measured <= tolerance.
  void at_most(std::string name, double measured, double tolerance) {
    out_.push_back({suite_, std::move(name), measured, tolerance, measured <= tolerance});
  }
  void in_range(std::string name, double measured, double lo, double hi) {
    out_.push_back({suite_, std::move(name), measured, hi, measured >= lo && measured <= hi});
  }

 private:
  std::vector<Check>& out_;
  std::string suite_;
};

Problem with_alpha(const Problem& pb, double alpha) {
  Config c = pb.cfg;
  c.alpha = alpha;
  return Problem(c);
}

double h1_quadrature(const Problem& pb, double t) {
  const Measure mu = mu_at(pb, t);
  return quadrature::integrate(
      [&](double x) {
        const double u = eval_u(pb, t, x), ux = eval_ux(pb, t, x);
        return u * u + ux * ux;
      },
      -kWindow, kWindow, mu.breakpoints());
}

double u2_quadrature(const Problem& pb, double t) {
  return quadrature::integrate(
      [&](double x) {
        const double u = eval_u(pb, t, x);
        return u * u;
      },
      -kWindow, kWindow, mu_at(pb, t).breakpoints());
}

double lagrangian_energy(const Problem& pb, double t) {
  const double kinks[] = {pb.xi1, pb.xi2};
  return quadrature::integrate(
      [&](double xi) {
        const LagrangianSample s = lagrangian_at(pb, t, xi);
        return s.U * s.U * s.y_xi + s.h_bar;
      },
      -kWindow, kWindow, kinks);
}

double nu_m_mass(const Problem& pb, double t) {
  const PeakonPair pp = trajectories(pb, t);
  return quadrature::integrate([&](double x) { return nu_m_density(pb, t, x); }, pp.q1, pp.q2);
}

void params_suite(const Problem& pb, Report& r) {
  r.suite("params");
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> pos(0.05, 5.0), neg(-5.0, -0.05), t0(0.1, 5.0),
      alpha(0.0, 1.0);
  double root = 0.0, energy = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Config c{pos(rng), neg(rng), t0(rng), alpha(rng)};
    if (std::abs(c.c1 + c.c2) < 1e-3) continue;
    const DerivedConstants d = derive(make_config(c.c1, c.c2, c.t0, c.alpha));
    const double s = c.c1 + c.c2, p = (1.0 - c.alpha) * c.c1 * c.c2;
    for (double x : {d.d1, d.d2}) {
      const double scale = std::max({x * x, std::abs(s * x), std::abs(p)});
      root = std::max(root, std::abs(x * x - s * x + p) / scale);
    }
    const double e = d.E2 + 4.0 * c.alpha * c.c1 * c.c2;
    energy = std::max(energy, std::abs(d.E2tilde - e) / d.E2);
  }
  r.at_most("d1, d2 solve the quadratic (1000 random configs, rel)", root, 1e-12);
  r.at_most("E2tilde = E2 + 4 alpha c1 c2 (1000 random configs, rel)", energy, 1e-12);
  const DerivedConstants d0 = derive(with_alpha(pb, 0.0).cfg);
  r.at_most("alpha = 0 gives d = c", std::abs(d0.d1 - pb.cfg.c1) + std::abs(d0.d2 - pb.cfg.c2),
            4.0 * std::numeric_limits<double>::epsilon() * pb.k.L);
  r.at_most("E2 = 2c1^2 + 2c2^2",
            std::abs(pb.k.E2 - 2.0 * (pb.cfg.c1 * pb.cfg.c1 + pb.cfg.c2 * pb.cfg.c2)), 1e-12);
}

void eulerian_suite(const Problem& pb, Report& r) {
  r.suite("eulerian");
  const double t0 = pb.cfg.t0;
  double cont = 0.0;
  for (double x = -10.0; x <= 10.0; x += 0.01) {
    cont = std::max(cont, std::abs(eval_u(pb, t0 - 1e-3, x) - eval_u(pb, t0, x)));
  }
  r.at_most("continuity at t0 (delta = 1e-3)", cont, 0.05);

  double piece = 0.0;
  for (double t : {0.0, t0 - 0.5, t0 + 0.5, t0 + 2.0}) {
    if (t > t0 && pb.dissipative()) continue;
    const PairShape s = pair_shape(pb, t);
    const double mid1 = s.a1 * std::exp(-s.q1) + s.b2 * std::exp(s.q1);
    const double mid2 = s.a1 * std::exp(-s.q2) + s.b2 * std::exp(s.q2);
    piece = std::max(piece, std::abs(s.left_amp * std::exp(s.q1) - mid1) / (1.0 + std::abs(mid1)));
    piece = std::max(piece, std::abs(s.right_amp * std::exp(-s.q2) - mid2) / (1.0 + std::abs(mid2)));
  }
  r.at_most("piecewise forms agree at the peaks", piece, 1e-12);

  for (double t : {t0 - 1.0, t0 - 0.1, t0 + 0.1, t0 + 1.0}) {
    r.at_most("quadrature energy = closed form at t=" + std::to_string(t),
              std::abs(h1_quadrature(pb, t) - energy(pb, t)), 1e-6);
  }

  double drift = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double tp = -2.0 + (t0 - 0.01 + 2.0) * k / 99.0;
    const PeakonPair a = trajectories(pb, tp);
    drift = std::max(drift, std::abs(a.p1 + a.p2 - pb.sum()) / std::abs(pb.sum()));
    if (!pb.dissipative()) {
      const PeakonPair b = trajectories(pb, t0 + 0.01 + 3.0 * k / 99.0);
      drift = std::max(drift, std::abs(b.p1 + b.p2 - pb.k.d1 - pb.k.d2) / std::abs(pb.sum()));
    }
  }
  r.at_most("p1 + p2 constant on each branch (100 times, rel)", drift, 1e-12);

  const Problem diss = with_alpha(pb, 1.0);
  const double dx = 1e-3;
  double worst = 0.0;
  for (double t : {t0 + 0.5, t0 + 1.0, t0 + 3.0}) {
    const double expected = one_peakon_position(diss, t);
    double best_x = 0.0, best = -1.0;
    for (double x = expected - 5.0; x <= expected + 5.0; x += dx) {
      const double v = std::abs(eval_u(diss, t, x));
      if (v > best) {
        best = v;
        best_x = x;
      }
    }
    worst = std::max(worst, std::abs(best_x - expected));
  }
  r.at_most("alpha = 1 peak at (c1+c2)(t-t0) (grid cell 1e-3)", worst, dx);
}

void measures_suite(const Problem& pb, Report& r) {
  r.suite("measures");
  const double t0 = pb.cfg.t0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tt(t0 - 3.0, t0 + 3.0), xx(-6.0, 6.0);
  double dom = 0.0;
  bool atoms_ok = true;
  for (int k = 0; k < 200; ++k) {
    const double t = k == 0 ? t0 : tt(rng);
    const Measure mu = mu_at(pb, t), nu = nu_at(pb, t);
    const double x = xx(rng);
    dom = std::max(dom, mu.density(x) - nu.density(x));
    for (const Atom& a : mu.atoms()) {
      bool matched = false;
      for (const Atom& b : nu.atoms()) matched |= (b.x == a.x && b.mass >= a.mass);
      atoms_ok = atoms_ok && matched;
    }
  }
  r.at_most("mu density <= nu density (200 random (t,x))", dom, 1e-12);
  r.at_most("every mu atom under a nu atom", atoms_ok ? 0.0 : 1.0, 0.0);

  const double booking = total_mass(nu_at(pb, t0), -kWindow, kWindow) + u2_quadrature(pb, t0);
  r.at_most("nu(t0) mass + int u^2 = E2", std::abs(booking - pb.k.E2), 1e-6);
  const double removed = -4.0 * pb.cfg.c1 * pb.cfg.c2;
  r.at_most("nu atom at t0 = -4 c1 c2",
            std::abs(nu_at(pb, t0).atoms()[0].mass - removed), 1e-12);

  const Problem mid = (pb.cfg.alpha > 0.0 && pb.cfg.alpha < 1.0) ? pb : with_alpha(pb, 0.5);
  for (double t : {t0 + 0.5, t0 + 2.0}) {
    r.at_most("nu_m mass = -4 alpha c1 c2 at t=" + std::to_string(t),
              std::abs(nu_m_mass(mid, t) + 4.0 * mid.cfg.alpha * mid.cfg.c1 * mid.cfg.c2), 1e-6);
  }

  // With alpha = 1 the nu mass is constant after t0. For alpha < 1 the
  // u_x^2 part trades mass with int u^2, and the mass that is conserved is
  // nu(R) + int u^2 - (-4 alpha c1 c2) = E2tilde.
  const Problem diss = with_alpha(pb, 1.0);
  const double m0 = total_mass(nu_at(diss, t0), -kWindow, kWindow);
  double cons = 0.0;
  for (double t : {t0 + 0.5, t0 + 2.0}) {
    cons = std::max(cons, std::abs(total_mass(nu_at(diss, t), -kWindow, kWindow) - m0));
  }
  r.at_most("alpha = 1: nu mass constant for t >= t0", cons, 1e-6);
  double book = 0.0;
  for (double t : {t0 + 0.5, t0 + 2.0}) {
    const double lhs = total_mass(nu_at(mid, t), -kWindow, kWindow) + u2_quadrature(mid, t);
    book = std::max(book, std::abs(lhs - (mid.k.E2tilde - 4.0 * mid.cfg.alpha * mid.cfg.c1 * mid.cfg.c2)));
  }
  r.at_most("alpha < 1: nu mass + int u^2 = E2tilde - 4 alpha c1 c2", book, 1e-6);
}

void lagrangian_suite(const Problem& pb, Report& r) {
  r.suite("lagrangian");
  const double t0 = pb.cfg.t0;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(-8.0, 8.0);
  struct Branch {
    const char* name;
    double lo, hi;
  };
  const Branch branches[] = {{"pre", -2.0, t0 - 1e-3}, {"at", t0, t0}, {"post", t0 + 1e-3, t0 + 3.0}};
  for (double alpha : {pb.cfg.alpha, 0.0, 1.0}) {
    const Problem p = with_alpha(pb, alpha);
    for (const Branch& b : branches) {
      std::uniform_real_distribution<double> ts(b.lo, b.hi);
      double compat = 0.0, dom = 0.0;
      for (int k = 0; k < 500; ++k) {
        const double t = b.lo == b.hi ? b.lo : ts(rng);
        const LagrangianSample s = lagrangian_at(p, t, xs(rng));
        const double a = s.y_xi * s.h_bar, c = s.U_xi * s.U_xi;
        if (a + c > 0.0) compat = std::max(compat, std::abs(a - c) / (a + c));
        dom = std::max(dom, s.h_bar - s.h);
      }
      const std::string tag = std::string(b.name) + ", alpha=" + std::to_string(alpha);
      r.at_most("y_xi h_bar = U_xi^2 (" + tag + ", rel)", compat, 1e-9);
      r.at_most("h >= h_bar (" + tag + ")", dom, 1e-12);
    }
    double mono = 0.0;
    for (double t : {0.0, t0 - 0.01, t0, t0 + 0.01, t0 + 2.0}) {
      double prev = -std::numeric_limits<double>::infinity();
      for (double xi = -10.0; xi <= 10.0; xi += 1e-3) {
        const double y = lagrangian_at(p, t, xi).y;
        mono = std::max(mono, prev - y);
        prev = y;
      }
    }
    r.at_most("y nondecreasing in xi (alpha=" + std::to_string(alpha) + ")", mono, 1e-12);
    for (double t : {0.5 * t0, t0, t0 + 0.5, t0 + 2.0}) {
      if (t == 0.5 * t0 || alpha == pb.cfg.alpha) {
        const double expected = t < t0 ? p.k.E2 : p.k.E2tilde;
        r.at_most("int (U^2 y_xi + h_bar) dxi = branch energy (t=" + std::to_string(t) +
                      ", alpha=" + std::to_string(alpha) + ")",
                  std::abs(lagrangian_energy(p, t) - expected), 1e-5);
      }
    }
  }

  for (double t : {0.5 * t0, t0 + 1.0}) {
    double err[3] = {0, 0, 0};
    const double deltas[3] = {1e-3, 5e-4, 2.5e-4};
    for (int k = 0; k < 3; ++k) {
      for (double xi = -3.0; xi <= 3.0; xi += 0.05) {
        const double fd = (lagrangian_at(pb, t + deltas[k], xi).y -
                           lagrangian_at(pb, t - deltas[k], xi).y) / (2.0 * deltas[k]);
        err[k] = std::max(err[k], std::abs(fd - lagrangian_at(pb, t, xi).U));
      }
    }
    r.in_range("y_t = U, finite-difference order ratio at t=" + std::to_string(t),
               std::min(err[0] / err[1], err[1] / err[2]), 3.5, 4.5);
  }

  double srange = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double xi = pb.xi1 + (pb.xi2 - pb.xi1) * k / 100.0;
    srange = std::max(srange, std::abs(helpers(pb, xi).S) - 1.0);
  }
  r.at_most("S in [-1, 1] on [xi1, xi2]", srange, 1e-12);
  const double ends = std::abs(helpers(pb, pb.xi1).S + 1.0) + std::abs(helpers(pb, pb.xi2).S - 1.0);
  r.at_most("S(xi1) = -1 and S(xi2) = +1", ends, 1e-10);
  const double ds = quadrature::integrate([&](double xi) { return helpers(pb, xi).S_prime; },
                                          pb.xi1, pb.xi2);
  r.at_most("int S' = 2", std::abs(ds - 2.0), 1e-8);
  const double atom = quadrature::integrate([&](double xi) { return profile_breaking(pb, xi).h; },
                                            pb.xi1, pb.xi2);
  r.at_most("int h(t0) over [xi1, xi2] = -4 c1 c2",
            std::abs(atom + 4.0 * pb.cfg.c1 * pb.cfg.c2), 1e-8);
}

void transforms_suite(const Problem& pb, Report& r) {
  r.suite("transforms");
  const double t0 = pb.cfg.t0;
  Eigen::ArrayXd xcheck = Eigen::ArrayXd::LinSpaced(81, -4.0, 4.0);
  for (double t : {0.0, t0, t0 + 1.0}) {
    const EulerianState st = eulerian_state(pb, t);
    const std::vector<double> kinks = lagrangian_kinks(st.nu);
    const double span = CumulativeMass(st.nu).total();
    const Eigen::ArrayXd xi = make_xi_grid(-20.0, 20.0 + span, 2000, kinks);
    const LagrangianProfile lp = to_lagrangian(st.field, st.mu, st.nu, xi, t);
    const RelabelCheckReport rep = check_F_membership(lp);
    const std::string tag = "t=" + std::to_string(t);
    r.at_most("L(u, mu, nu) in F (" + tag + ")", rep.is_member ? 0.0 : 1.0, 0.0);
    const EulerianSamples back = to_eulerian(lp, xcheck);
    double du = 0.0;
    for (Index i = 0; i < xcheck.size(); ++i) {
      du = std::max(du, std::abs(back.u(i) - eval_u(pb, t, xcheck(i))));
    }
    r.at_most("M(L(u)) = u (" + tag + ")", du, 1e-8);
    std::vector<double> cuts{-10.0};
    for (double b : st.nu.breakpoints()) cuts.push_back(b);
    cuts.push_back(10.0);
    double dm = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      dm = std::max(dm, std::abs(total_mass(back.mu, cuts[k], cuts[k + 1]) -
                                 total_mass(st.mu, cuts[k], cuts[k + 1])));
      dm = std::max(dm, std::abs(total_mass(back.nu, cuts[k], cuts[k + 1]) -
                                 total_mass(st.nu, cuts[k], cuts[k + 1])));
    }
    r.at_most("M(L) interval masses of mu, nu (" + tag + ")", dm, 1e-6);

    const XiGrid grid(lp.xi, lp.kinks);
    const double lo = lp.y(0), hi = lp.y(lp.size() - 1);
    const double push = total_mass(back.nu, lo, hi);
    const double direct = grid.integrate(lp.h);
    r.at_most("pushforward mass = int h dxi (" + tag + ", rel)",
              std::abs(push - direct) / direct, 1e-10);

    if (t == 0.0) {
      std::mt19937_64 rng(3);
      std::uniform_real_distribution<double> amp(0.05, 0.4), freq(0.3, 2.0), phase(0.0, 6.28);
      double inv = 0.0;
      for (int k = 0; k < 5; ++k) {
        const double a = amp(rng), w = std::min(freq(rng), 0.9 / a), ph = phase(rng);
        Relabeling g{[=](double s) { return s + a * std::sin(w * s + ph); },
                     [=](double s) { return 1.0 + a * w * std::cos(w * s + ph); }};
        const EulerianSamples other = to_eulerian(relabel(lp, g), xcheck);
        inv = std::max(inv, (other.u - back.u).abs().maxCoeff());
      }
      r.at_most("M invariant under 5 random relabelings", inv, 1e-7);
    }
  }
}

void oracle_suite(const Problem& pb, const VerifyOptions& opt, Report& r) {
  r.suite("oracle");
  const double t0 = pb.cfg.t0;
  for (double alpha : {0.0, 0.5, 1.0}) {
    const Problem p = with_alpha(pb, alpha);
    LegSpec pre{0.0, t0 - 0.05, 0.0, 1e-3, opt.oracle_nodes};
    LegSpec post{t0, t0 + 1.0, t0 + 0.05, 1e-3, opt.oracle_nodes};
    const LegReport a = run_leg(p, pre);
    const LegReport b = run_leg(p, post);
    const std::string tag = "alpha=" + std::to_string(alpha);
    r.at_most("oracle vs closed form before t0 (" + tag + ")", std::max(a.max_err_y, a.max_err_U), 1e-4);
    r.at_most("oracle vs closed form after t0 (" + tag + ")", std::max(b.max_err_y, b.max_err_U), 1e-4);
    if (alpha == 0.0) r.at_most("conservative energy drift before t0 (rel)", a.energy_drift, 1e-5);
  }
  LegSpec coarse{0.0, t0 - 0.05, 0.0, (t0 - 0.05) / 16.0, opt.oracle_nodes};
  r.in_range("Richardson ratio (dt, dt/2, dt/4)", richardson_ratio(pb, coarse), 12.0, 20.0);

  const Index n = 801;
  const Eigen::ArrayXd xi = Eigen::ArrayXd::LinSpaced(n, -10.0, 10.0);
  LagrangianProfile sym(0.0, xi, {});
  sym.y = xi;
  sym.y_xi.setOnes();
  sym.U = (-xi.square()).exp();
  sym.U_xi = -2.0 * xi * sym.U;
  sym.h = sym.U_xi.square();
  sym.h_bar = sym.h;
  const PQField pq = compute_pq(sym, false);
  double parity = 0.0;
  for (Index i = 0; i < n; ++i) {
    parity = std::max(parity, std::abs(pq.P(i) - pq.P(n - 1 - i)));
    parity = std::max(parity, std::abs(pq.Q(i) + pq.Q(n - 1 - i)));
  }
  r.at_most("P even and Q odd for a symmetric profile", parity, 1e-10);
  const double pmin = pq.P.minCoeff();
  r.at_most("P >= 0", std::max(0.0, -pmin), 0.0);

  LegSpec grid_spec;
  const Eigen::ArrayXd lab = oracle_grid(pb, grid_spec);
  const LagrangianProfile lim = breaking_limit(pb, lab);
  const LagrangianProfile cut = apply_breaking(lim, pb.cfg.alpha);
  double touched = (cut.h - lim.h).abs().maxCoeff();
  for (Index i = 0; i < lab.size(); ++i) {
    if (lim.y_xi(i) > kPlateauThreshold) touched = std::max(touched, std::abs(cut.h_bar(i) - lim.h_bar(i)));
  }
  r.at_most("apply_breaking leaves h, and h_bar off the plateau, unchanged", touched, 0.0);
  const XiGrid g(lab, lim.kinks);
  r.at_most("apply_breaking removes -4 alpha c1 c2",
            std::abs(g.integrate(cut.h - cut.h_bar) + 4.0 * pb.cfg.alpha * pb.cfg.c1 * pb.cfg.c2), 1e-6);

  const auto [z, v] = reduced_zv_integrate(pb, 0.0, 0.0, t0 + 5.0, 1e-3);
  r.at_most("z-V system keeps the origin fixed", std::abs(z) + std::abs(v), 0.0);
}

}  // namespace

std::vector<Check> verify_all(const Problem& pb, const VerifyOptions& opt) {
  std::vector<Check> out;
  Report r(out);
  params_suite(pb, r);
  eulerian_suite(pb, r);
  measures_suite(pb, r);
  lagrangian_suite(pb, r);
  transforms_suite(pb, r);
  if (opt.include_oracle) oracle_suite(pb, opt, r);
  return out;
}

}  // namespace peakon
