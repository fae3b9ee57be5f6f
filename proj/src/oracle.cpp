#include "peakon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "peakon/errors.hpp"
#include "peakon/eulerian.hpp"
#include "peakon/lagrangian.hpp"
#include "peakon/transforms.hpp"

namespace peakon {
namespace {

constexpr double kBlowup = 1e12;

struct Rates {
  Eigen::ArrayXd y, U, y_xi, U_xi, h;
};

Rates rates(const LagrangianProfile& p, const PQField& pq, bool use_hbar) {
  const Eigen::ArrayXd& f = use_hbar ? p.h_bar : p.h;
  const Eigen::ArrayXd gap = p.U.square() - pq.P;
  return {p.U, -pq.Q, p.U_xi, 0.5 * f + gap * p.y_xi, 2.0 * gap * p.U_xi};
}

LagrangianProfile advance(const LagrangianProfile& p, const Rates& r, double dt) {
  LagrangianProfile q = p;
  q.t = p.t + dt;
  q.y += dt * r.y;
  q.U += dt * r.U;
  q.y_xi += dt * r.y_xi;
  q.U_xi += dt * r.U_xi;
  q.h += dt * r.h;
  q.h_bar += dt * r.h;
  return q;
}

void check_blowup(const LagrangianProfile& p) {
  for (const Eigen::ArrayXd* a : {&p.y, &p.U, &p.y_xi, &p.U_xi, &p.h, &p.h_bar}) {
    const double m = a->abs().maxCoeff();
    if (!(m <= kBlowup)) {
      std::ostringstream os;
      os << "field magnitude " << m << " at t=" << p.t;
      throw BlowupError(os.str());
    }
  }
}

double discrete_energy(const LagrangianProfile& p, const XiGrid& grid) {
  return grid.integrate(p.U.square() * p.y_xi + p.h_bar);
}

}  // namespace

PQField compute_pq(const LagrangianProfile& p, const XiGrid& grid, bool use_hbar) {
  const Eigen::ArrayXd w = 2.0 * p.U.square() * p.y_xi + (use_hbar ? p.h_bar : p.h);
  const Eigen::ArrayXd ey = p.y.exp();
  const Eigen::ArrayXd emy = (-p.y).exp();
  const Eigen::ArrayXd A = grid.cumulative(ey * w);
  const Eigen::ArrayXd Bc = grid.cumulative(emy * w);
  const Eigen::ArrayXd B = Bc(Bc.size() - 1) - Bc;
  PQField out;
  out.P = 0.25 * (emy * A + ey * B);
  out.Q = -0.25 * (emy * A - ey * B);
  return out;
}

PQField compute_pq(const LagrangianProfile& p, bool use_hbar) {
  return compute_pq(p, XiGrid(p.xi, p.kinks), use_hbar);
}

LagrangianProfile step(const LagrangianProfile& p, const XiGrid& grid, const PQField& pq,
                       double dt, bool use_hbar) {
  if (dt == 0.0) return p;
  const Rates k1 = rates(p, pq, use_hbar);
  const LagrangianProfile s2 = advance(p, k1, 0.5 * dt);
  const Rates k2 = rates(s2, compute_pq(s2, grid, use_hbar), use_hbar);
  const LagrangianProfile s3 = advance(p, k2, 0.5 * dt);
  const Rates k3 = rates(s3, compute_pq(s3, grid, use_hbar), use_hbar);
  const LagrangianProfile s4 = advance(p, k3, dt);
  const Rates k4 = rates(s4, compute_pq(s4, grid, use_hbar), use_hbar);
  const Rates sum{(k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y) / 6.0,
                  (k1.U + 2.0 * k2.U + 2.0 * k3.U + k4.U) / 6.0,
                  (k1.y_xi + 2.0 * k2.y_xi + 2.0 * k3.y_xi + k4.y_xi) / 6.0,
                  (k1.U_xi + 2.0 * k2.U_xi + 2.0 * k3.U_xi + k4.U_xi) / 6.0,
                  (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h) / 6.0};
  LagrangianProfile out = advance(p, sum, dt);
  check_blowup(out);
  return out;
}

LagrangianProfile step(const LagrangianProfile& p, const PQField& pq, double dt,
                       bool use_hbar) {
  return step(p, XiGrid(p.xi, p.kinks), pq, dt, use_hbar);
}

LagrangianProfile integrate(const LagrangianProfile& p, double t_end, double dt, bool use_hbar,
                            const StepObserver& observe) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const XiGrid grid(p.xi, p.kinks);
  LagrangianProfile cur = p;
  const double t0 = p.t;
  const auto n = static_cast<long long>(std::ceil((t_end - t0) / dt - 1e-9));
  for (long long k = 0; k < n; ++k) {
    const double t_next = std::min(t_end, t0 + static_cast<double>(k + 1) * dt);
    cur = step(cur, grid, compute_pq(cur, grid, use_hbar), t_next - cur.t, use_hbar);
    cur.t = t_next;
    if (observe) observe(cur);
  }
  return cur;
}

LagrangianProfile breaking_limit(const Problem& pb, const Eigen::ArrayXd& xi) {
  LagrangianProfile p = closed_form_profile(pb, pb.cfg.t0, xi);
  p.h_bar = p.h;
  return p;
}

LagrangianProfile apply_breaking(const LagrangianProfile& p, double alpha) {
  LagrangianProfile out = p;
  Index hits = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p.y_xi(i) <= kPlateauThreshold) {
      out.h_bar(i) = (1.0 - alpha) * p.h(i);
      ++hits;
    }
  }
  if (hits == 0) throw NoBreakingError("no node with y_xi = 0");
  return out;
}

std::pair<double, double> reduced_zv_integrate(const Problem& pb, double z0, double v0,
                                               double t_end, double dt) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const double s = pb.sum();
  double z = z0, v = v0, t = pb.cfg.t0;
  while (t < t_end) {
    const double h = std::min(dt, t_end - t);
    const double sg = (z > 0.0) - (z < 0.0);
    auto fv = [&](double vv) { return -sg * vv * (vv + s); };
    const double kz1 = v, kv1 = fv(v);
    const double kz2 = v + 0.5 * h * kv1, kv2 = fv(v + 0.5 * h * kv1);
    const double kz3 = v + 0.5 * h * kv2, kv3 = fv(v + 0.5 * h * kv2);
    const double kz4 = v + h * kv3, kv4 = fv(v + h * kv3);
    z += h * (kz1 + 2 * kz2 + 2 * kz3 + kz4) / 6.0;
    v += h * (kv1 + 2 * kv2 + 2 * kv3 + kv4) / 6.0;
    t += h;
  }
  return {z, v};
}

Eigen::ArrayXd oracle_grid(const Problem& pb, const LegSpec& spec) {
  const double kinks[] = {pb.xi1, pb.xi2};
  return make_xi_grid(spec.xi_lo, spec.xi_hi, spec.nodes, kinks, spec.grid_ratio);
}

namespace {

LagrangianProfile leg_start(const Problem& pb, const LegSpec& spec, const Eigen::ArrayXd& xi,
                            bool& post) {
  const double t0 = pb.cfg.t0;
  if (spec.t_start == t0) {
    post = true;
    return apply_breaking(breaking_limit(pb, xi), pb.cfg.alpha);
  }
  if (spec.t_start == 0.0 && spec.t_end < t0) {
    post = false;
    LagrangianProfile p(0.0, xi, {pb.xi1, pb.xi2});
    for (Index i = 0; i < xi.size(); ++i) p.set(i, initial_profile(pb, xi(i)));
    return p;
  }
  throw DomainError("a leg starts at 0 (ending before t0) or at t0");
}

}  // namespace

LegReport run_leg(const Problem& pb, const LegSpec& spec) {
  const Eigen::ArrayXd xi = oracle_grid(pb, spec);
  bool post = false;
  const LagrangianProfile start = leg_start(pb, spec, xi, post);
  const XiGrid grid(start.xi, start.kinks);
  const double e0 = discrete_energy(start, grid);
  LegReport rep;
  auto observe = [&](const LagrangianProfile& cur) {
    ++rep.steps;
    rep.energy_drift = std::max(rep.energy_drift, std::abs(discrete_energy(cur, grid) - e0) / e0);
    if (cur.t < spec.check_from - 1e-12) return;
    const LagrangianProfile ref = closed_form_profile(pb, cur.t, xi);
    rep.max_err_y = std::max(rep.max_err_y, (cur.y - ref.y).abs().maxCoeff());
    rep.max_err_U = std::max(rep.max_err_U, (cur.U - ref.U).abs().maxCoeff());
  };
  rep.final_state = integrate(start, spec.t_end, spec.dt, post, observe);
  return rep;
}

double richardson_ratio(const Problem& pb, LegSpec spec) {
  const Eigen::ArrayXd xi = oracle_grid(pb, spec);
  bool post = false;
  const LagrangianProfile start = leg_start(pb, spec, xi, post);
  LagrangianProfile runs[3];
  double dt = spec.dt;
  for (auto& r : runs) {
    r = integrate(start, spec.t_end, dt, post);
    dt *= 0.5;
  }
  auto dist = [](const LagrangianProfile& a, const LagrangianProfile& b) {
    return std::max((a.y - b.y).abs().maxCoeff(), (a.U - b.U).abs().maxCoeff());
  };
  return dist(runs[0], runs[1]) / dist(runs[1], runs[2]);
}

}  // namespace peakon
