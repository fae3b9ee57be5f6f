#include "peakon/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "peakon/errors.hpp"
#include "peakon/grid.hpp"
#include "peakon/parallel.hpp"
#include "peakon/quadrature.hpp"

namespace peakon {
namespace {

constexpr int kMaxBisection = 200;

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double atom_mass_at(const Measure& m, double x) {
  for (const Atom& a : m.atoms()) {
    if (std::abs(a.x - x) <= 1e-12 * (1.0 + std::abs(x))) return a.mass;
  }
  return 0.0;
}

// First label of the jump of xi = x + nu((-inf, x)) across each atom.
struct AtomLabels {
  double x;
  double mass;
  double lo;
  double hi;
};

std::vector<AtomLabels> atom_labels(const CumulativeMass& cm, const Measure& nu) {
  std::vector<AtomLabels> out;
  for (const Atom& a : nu.atoms()) {
    const double lo = a.x + cm.below(a.x);
    out.push_back({a.x, a.mass, lo, lo + a.mass});
  }
  return out;
}

std::vector<double> kinks_from(const CumulativeMass& cm, const Measure& nu) {
  std::vector<double> k;
  for (double b : nu.breakpoints()) k.push_back(b + cm.below(b));
  for (const AtomLabels& a : atom_labels(cm, nu)) {
    k.push_back(a.lo);
    k.push_back(a.hi);
  }
  return sorted_unique(std::move(k));
}

}  // namespace

CumulativeMass::CumulativeMass(const Measure& m) : m_(m) {
  std::vector<double> pts;
  for (double b : m_.breakpoints()) pts.push_back(b);
  for (const Atom& a : m_.atoms()) pts.push_back(a.x);
  const double lo = (pts.empty() ? 0.0 : *std::min_element(pts.begin(), pts.end())) - 40.0;
  const double hi = (pts.empty() ? 0.0 : *std::max_element(pts.begin(), pts.end())) + 40.0;
  for (double x = lo; x < hi; x += 0.5) pts.push_back(x);
  pts.push_back(hi);
  anchors_ = sorted_unique(std::move(pts));

  auto dens = [this](double x) { return m_.density(x); };
  at_anchor_.resize(anchors_.size());
  at_anchor_[0] = quadrature::integrate_left_tail(dens, anchors_[0]);
  for (std::size_t i = 1; i < anchors_.size(); ++i) {
    at_anchor_[i] = at_anchor_[i - 1] + quadrature::integrate(dens, anchors_[i - 1], anchors_[i]);
  }
  total_ = at_anchor_.back() + quadrature::integrate_right_tail(dens, anchors_.back());
  for (const Atom& a : m_.atoms()) total_ += a.mass;
}

double CumulativeMass::below(double x) const {
  auto dens = [this](double s) { return m_.density(s); };
  double sum;
  if (x <= anchors_.front()) {
    sum = quadrature::integrate_left_tail(dens, x);
  } else {
    const auto it = std::upper_bound(anchors_.begin(), anchors_.end(), x) - 1;
    const std::size_t k = static_cast<std::size_t>(it - anchors_.begin());
    sum = at_anchor_[k] + (x > *it ? quadrature::integrate(dens, *it, x) : 0.0);
  }
  for (const Atom& a : m_.atoms()) {
    if (a.x < x) sum += a.mass;
  }
  return sum;
}

std::vector<double> lagrangian_kinks(const Measure& nu) {
  return kinks_from(CumulativeMass(nu), nu);
}

LagrangianProfile to_lagrangian(const EulerianField& field, const Measure& mu,
                                const Measure& nu, const Eigen::ArrayXd& xi, double t) {
  const CumulativeMass cm(nu);
  const std::vector<AtomLabels> jumps = atom_labels(cm, nu);
  LagrangianProfile out(t, xi, kinks_from(cm, nu));
  const double span = cm.total() + 1.0;

  parallel_for(xi.size(), [&](std::int64_t i) {
    const double target = xi(i);
    LagrangianSample s;
    for (const AtomLabels& a : jumps) {
      if (target >= a.lo && target <= a.hi) {
        s.y = a.x;
        s.y_xi = 0.0;
        s.U = field.u(a.x);
        s.U_xi = 0.0;
        s.h = 1.0;
        s.h_bar = atom_mass_at(mu, a.x) / a.mass;
        out.set(i, s);
        return;
      }
    }
    auto F = [&](double y) { return y + cm.below(y); };
    double lo = target - span, hi = target + 1.0;
    if (!(F(lo) < target) || !(F(hi) >= target)) {
      std::ostringstream os;
      os << "no bracket for xi=" << target;
      throw ConvergenceError(os.str());
    }
    const double tol = 1e-14 * (1.0 + std::abs(target));
    int it = 0;
    while (hi - lo > tol) {
      if (++it > kMaxBisection) {
        std::ostringstream os;
        os << "bisection did not converge for xi=" << target;
        throw ConvergenceError(os.str());
      }
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (F(mid) < target) lo = mid; else hi = mid;
    }
    const double y = 0.5 * (lo + hi);
    const double dens = nu.density(y);
    s.y = y;
    s.y_xi = 1.0 / (1.0 + dens);
    s.h = dens * s.y_xi;
    s.h_bar = mu.density(y) * s.y_xi;
    s.U = field.u(y);
    s.U_xi = field.ux(y) * s.y_xi;
    out.set(i, s);
  });
  return out;
}

namespace {

// Inverse of the characteristic map of one profile.
class ProfileInverse {
 public:
  explicit ProfileInverse(const LagrangianProfile& p) : p_(p), grid_(p.xi, p.kinks) {}

  struct Location {
    Index cell;
    double s;
  };

  bool locate(double x, Location& loc) const {
    const Index n = p_.size();
    if (!(x >= p_.y(0) && x <= p_.y(n - 1))) return false;
    const double* b = p_.y.data();
    Index j = static_cast<Index>(std::upper_bound(b, b + n, x) - b) - 1;
    if (j >= n - 1) {
      loc = {n - 2, 1.0};
      return true;
    }
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (cell_value(p_.y, p_.y_xi, j, mid) < x) lo = mid; else hi = mid;
    }
    loc = {j, 0.5 * (lo + hi)};
    return true;
  }

  // Cubic Hermite inside a smooth segment; on a cell straddling a kink, the
  // tangent line of the nearer end on each side of the kink.
  double cell_value(const Eigen::ArrayXd& f, const Eigen::ArrayXd& df, Index j, double s) const {
    const double w = p_.xi(j + 1) - p_.xi(j);
    if (!grid_.straddles_kink(j)) return hermite_value(f(j), f(j + 1), df(j), df(j + 1), w, s);
    const double xi = p_.xi(j) + s * w;
    if (xi < kink_in(j)) return f(j) + df(j) * (xi - p_.xi(j));
    return f(j + 1) - df(j + 1) * (p_.xi(j + 1) - xi);
  }

  double u(double x) const {
    Location l;
    if (!locate(x, l)) {
      std::ostringstream os;
      os << "x=" << x << " outside the image [" << p_.y(0) << ", " << p_.y(p_.size() - 1) << "]";
      throw DomainError(os.str());
    }
    return cell_value(p_.U, p_.U_xi, l.cell, l.s);
  }

  double density(const Eigen::ArrayXd& f, double x) const {
    Location l;
    if (!locate(x, l)) return 0.0;
    const Index j = l.cell;
    const double w = p_.xi(j + 1) - p_.xi(j);
    if (!grid_.straddles_kink(j)) {
      const double slope = hermite_slope(p_.y(j), p_.y(j + 1), p_.y_xi(j), p_.y_xi(j + 1), w, l.s);
      if (slope > 0.0 && std::isfinite(slope)) {
        return grid_.interpolate(f, p_.xi(j) + l.s * w) / slope;
      }
    }
    return regular_mass(f, j) / (p_.y(j + 1) - p_.y(j));
  }

  // Mass of f on cell j outside any plateau.
  double regular_mass(const Eigen::ArrayXd& f, Index j) const {
    const bool flat_l = plateau(j), flat_r = plateau(j + 1);
    if (grid_.straddles_kink(j) && flat_l != flat_r) {
      const double k = kink_in(j);
      return flat_r ? f(j) * (k - p_.xi(j)) : f(j + 1) * (p_.xi(j + 1) - k);
    }
    return grid_.cell_integral(f, j);
  }

  bool plateau(Index i) const { return p_.y_xi(i) < kPlateauThreshold; }

  double kink_in(Index j) const {
    for (double k : p_.kinks) {
      if (k > p_.xi(j) && k < p_.xi(j + 1)) return k;
    }
    return 0.5 * (p_.xi(j) + p_.xi(j + 1));
  }

  std::vector<Atom> atoms(const Eigen::ArrayXd& f) const {
    std::vector<Atom> out;
    const Index n = p_.size();
    Index i = 0;
    while (i < n) {
      if (!plateau(i)) {
        ++i;
        continue;
      }
      Index r1 = i;
      while (r1 + 1 < n && plateau(r1 + 1)) ++r1;
      if (r1 - i >= 2) {
        double mass = 0.0, pos = 0.0;
        for (Index c = i; c < r1; ++c) mass += grid_.cell_integral(f, c);
        if (i > 0 && grid_.straddles_kink(i - 1)) mass += f(i) * (p_.xi(i) - kink_in(i - 1));
        if (r1 + 1 < n && grid_.straddles_kink(r1)) mass += f(r1) * (kink_in(r1) - p_.xi(r1));
        for (Index c = i; c <= r1; ++c) pos += p_.y(c);
        pos /= static_cast<double>(r1 - i + 1);
        if (mass > 1e-12) out.push_back({pos, mass});
      }
      i = r1 + 1;
    }
    return out;
  }

  // Images of the nodes and of the kinks; the density is smooth in between.
  std::vector<double> breakpoints() const {
    std::vector<double> out(p_.y.data(), p_.y.data() + p_.size());
    for (double k : p_.kinks) {
      if (k > p_.xi(0) && k < p_.xi(p_.size() - 1)) out.push_back(grid_.interpolate(p_.y, k));
    }
    return out;
  }

  const LagrangianProfile& profile() const { return p_; }

 private:
  LagrangianProfile p_;
  XiGrid grid_;
};

Measure pushforward(const std::shared_ptr<const ProfileInverse>& inv, bool use_hbar) {
  const Eigen::ArrayXd& f = use_hbar ? inv->profile().h_bar : inv->profile().h;
  std::vector<Atom> atoms = inv->atoms(f);
  std::vector<double> bps = inv->breakpoints();
  for (const Atom& a : atoms) bps.push_back(a.x);
  auto dens = [inv, use_hbar](double x) {
    return inv->density(use_hbar ? inv->profile().h_bar : inv->profile().h, x);
  };
  return Measure(dens, sorted_unique(std::move(bps)), std::move(atoms));
}

}  // namespace

EulerianSamples to_eulerian(const LagrangianProfile& profile, const Eigen::ArrayXd& x) {
  auto inv = std::make_shared<const ProfileInverse>(profile);
  EulerianSamples out;
  out.x = x;
  out.u.resize(x.size());
  parallel_for(x.size(), [&](std::int64_t i) { out.u(i) = inv->u(x(i)); });
  out.mu = pushforward(inv, true);
  out.nu = pushforward(inv, false);
  return out;
}

RelabelCheckReport check_F_membership(const LagrangianProfile& p) {
  RelabelCheckReport r;
  const Index n = p.size();
  auto flag = [&r](double xi, std::string why) { r.violations.push_back({xi, std::move(why)}); };
  for (Index i = 0; i < n; ++i) {
    const double xi = p.xi(i);
    if (p.y_xi(i) < 0.0) flag(xi, "y_xi < 0");
    if (p.h(i) < 0.0) flag(xi, "h < 0");
    if (p.h_bar(i) < 0.0) flag(xi, "h_bar < 0");
    if (p.h(i) < p.h_bar(i) - 1e-12) flag(xi, "h < h_bar");
    const double a = p.y_xi(i) * p.h_bar(i), b = p.U_xi(i) * p.U_xi(i);
    const double res = (a + b > 0.0) ? std::abs(a - b) / (a + b) : 0.0;
    r.max_compat_residual = std::max(r.max_compat_residual, res);
    if (res > 1e-9) flag(xi, "y_xi h_bar != U_xi^2");
    const double inv = 1.0 / (p.y_xi(i) + p.h(i));
    if (!std::isfinite(inv)) flag(xi, "y_xi + h = 0");
    r.max_inverse = std::max(r.max_inverse, inv);
    if (!std::isfinite(p.y(i)) || !std::isfinite(p.U(i)) || !std::isfinite(p.U_xi(i))) {
      flag(xi, "non-finite field");
    }
  }
  r.min_slope = std::numeric_limits<double>::infinity();
  double H = 0.0;
  for (Index i = 0; i + 1 < n; ++i) {
    const double dxi = p.xi(i + 1) - p.xi(i);
    const double dH = 0.5 * (p.h(i) + p.h(i + 1)) * dxi;
    const double slope = (p.y(i + 1) - p.y(i) + dH) / dxi;
    H += dH;
    r.min_slope = std::min(r.min_slope, slope);
    if (!(slope > 0.0)) flag(p.xi(i), "y + H not increasing");
  }
  r.is_member = r.min_slope > 0.0 && r.violations.empty();
  return r;
}

namespace {

double invert_increasing(const std::function<double(double)>& g, double target) {
  double lo = target, hi = target, step = 1.0;
  int guard = 0;
  while (g(lo) > target) {
    lo -= step;
    step *= 2.0;
    if (++guard > 200) throw MonotonicityError("relabeling map is not onto");
  }
  step = 1.0;
  while (g(hi) < target) {
    hi += step;
    step *= 2.0;
    if (++guard > 400) throw MonotonicityError("relabeling map is not onto");
  }
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

LagrangianProfile relabel(const LagrangianProfile& p, const Relabeling& g) {
  const Index n = p.size();
  Eigen::ArrayXd labels(n);
  for (Index i = 0; i < n; ++i) labels(i) = invert_increasing(g.g, p.xi(i));
  for (Index i = 0; i + 1 < n; ++i) {
    if (!(labels(i + 1) > labels(i))) {
      std::ostringstream os;
      os << "relabeling map is not increasing near xi=" << p.xi(i);
      throw MonotonicityError(os.str());
    }
  }
  for (Index i = 0; i + 1 < n; ++i) {
    const double mid = 0.5 * (labels(i) + labels(i + 1));
    if (!(g.slope(mid) > 0.0)) {
      std::ostringstream os;
      os << "relabeling slope " << g.slope(mid) << " at xi=" << mid;
      throw MonotonicityError(os.str());
    }
  }
  std::vector<double> kinks;
  for (double k : p.kinks) kinks.push_back(invert_increasing(g.g, k));
  LagrangianProfile out(p.t, labels, kinks);
  for (Index i = 0; i < n; ++i) {
    const double d = g.slope(labels(i));
    if (!(d > 0.0) || !std::isfinite(d)) {
      std::ostringstream os;
      os << "relabeling slope " << d << " at xi=" << labels(i);
      throw MonotonicityError(os.str());
    }
    out.y(i) = p.y(i);
    out.U(i) = p.U(i);
    out.y_xi(i) = p.y_xi(i) * d;
    out.U_xi(i) = p.U_xi(i) * d;
    out.h(i) = p.h(i) * d;
    out.h_bar(i) = p.h_bar(i) * d;
  }
  return out;
}

LagrangianProfile squeeze(const LagrangianProfile& p, double a, double b) {
  if (!(b >= a)) throw DomainError("squeeze needs a <= b");
  std::vector<Index> keep;
  bool has_a = false;
  for (Index i = 0; i < p.size(); ++i) {
    const double xi = p.xi(i);
    if (xi <= a) {
      keep.push_back(i);
      has_a = has_a || xi == a;
    } else if (xi >= b && !(xi == b && has_a)) {
      keep.push_back(i);
    }
  }
  Eigen::ArrayXd labels(static_cast<Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    const double xi = p.xi(keep[j]);
    labels(static_cast<Index>(j)) = xi <= a ? xi : xi - (b - a);
  }
  std::vector<double> kinks;
  for (double k : p.kinks) {
    if (k <= a) kinks.push_back(k);
    else if (k >= b) kinks.push_back(k - (b - a));
  }
  LagrangianProfile out(p.t, labels, sorted_unique(std::move(kinks)));
  for (std::size_t j = 0; j < keep.size(); ++j) out.set(static_cast<Index>(j), p.sample(keep[j]));
  return out;
}

}  // namespace peakon
