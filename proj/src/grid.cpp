#include "peakon/grid.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "peakon/errors.hpp"

namespace peakon {

namespace {

// Offsets of the graded nodes on one side of a kink: successive offsets grow
// by 1/ratio until the spacing reaches dx.
std::vector<double> graded_offsets(double dx, double ratio, double min_offset) {
  std::vector<double> out;
  double d = min_offset;
  while (true) {
    out.push_back(d);
    const double next = d / ratio;
    if (next - d >= dx) break;
    d = next;
  }
  return out;
}

std::vector<double> build_grid(double lo, double hi, std::span<const double> inside, double dx,
                               double ratio, double min_offset) {
  const std::vector<double> off = graded_offsets(dx, ratio, min_offset);
  const double reach = off.back();
  std::vector<double> pts;
  // Free intervals between graded zones are filled uniformly with spacing <= dx.
  std::vector<std::pair<double, double>> free;
  double left = lo;
  for (double k : inside) {
    for (double d : off) {
      if (k - d > lo) pts.push_back(k - d);
      if (k + d < hi) pts.push_back(k + d);
    }
    const double a = std::max(lo, k - reach);
    if (a > left) free.push_back({left, a});
    left = std::max(left, std::min(hi, k + reach));
  }
  if (hi > left) free.push_back({left, hi});
  for (auto [a, b] : free) {
    const auto cells = static_cast<Index>(std::ceil((b - a) / dx - 1e-9));
    for (Index j = 0; j <= cells; ++j) {
      pts.push_back(j == cells ? b : a + (b - a) * static_cast<double>(j) / static_cast<double>(cells));
    }
  }
  pts.push_back(lo);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  out.reserve(pts.size());
  for (double p : pts) {
    if (p < lo || p > hi) continue;
    if (out.empty() || p - out.back() > 0.25 * std::min(dx, min_offset)) out.push_back(p);
  }
  return out;
}

}  // namespace

Eigen::ArrayXd make_xi_grid(double lo, double hi, Index n_total,
                            std::span<const double> kinks, double ratio, double min_offset) {
  if (!(hi > lo) || n_total < 2) throw DomainError("grid needs hi > lo and >= 2 nodes");
  if (!(ratio > 0.0 && ratio < 1.0) || !(min_offset > 0.0)) {
    throw DomainError("grid needs 0 < ratio < 1 and min_offset > 0");
  }
  std::vector<double> inside;
  for (double k : kinks) {
    if (k > lo && k < hi) inside.push_back(k);
  }
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());

  // The node count decreases with dx; bisect dx for the requested total.
  double a = 1e-6 * (hi - lo), b = hi - lo;
  for (int it = 0; it < 100; ++it) {
    const double mid = std::sqrt(a * b);
    const auto n = static_cast<Index>(build_grid(lo, hi, inside, mid, ratio, min_offset).size());
    if (n > n_total) a = mid; else b = mid;
  }
  const std::vector<double> out = build_grid(lo, hi, inside, b, ratio, min_offset);
  return Eigen::Map<const Eigen::ArrayXd>(out.data(), static_cast<Index>(out.size()));
}

XiGrid::XiGrid(Eigen::ArrayXd nodes, std::vector<double> kinks)
    : x_(std::move(nodes)), kinks_(std::move(kinks)) {
  const Index n = x_.size();
  if (n < 2) throw DomainError("grid needs at least two nodes");
  for (Index i = 0; i + 1 < n; ++i) {
    if (!(x_(i + 1) > x_(i))) throw MonotonicityError("grid must be strictly increasing");
  }
  std::sort(kinks_.begin(), kinks_.end());

  // Segment id of a node: number of kinks strictly below it.
  Eigen::ArrayXi seg(n);
  for (Index i = 0; i < n; ++i) {
    seg(i) = static_cast<int>(
        std::lower_bound(kinks_.begin(), kinks_.end(), x_(i)) - kinks_.begin());
  }
  std::vector<Index> first(kinks_.size() + 1, -1), last(kinks_.size() + 1, -1);
  for (Index i = 0; i < n; ++i) {
    if (first[seg(i)] < 0) first[seg(i)] = i;
    last[seg(i)] = i;
  }

  const Index cells = n - 1;
  start_.resize(cells);
  width_.resize(cells);
  weights_ = Eigen::ArrayXXd::Zero(4, cells);
  for (Index i = 0; i < cells; ++i) {
    const double h = x_(i + 1) - x_(i);
    if (seg(i) != seg(i + 1)) {
      start_(i) = -1;
      width_(i) = 2;
      weights_(0, i) = weights_(1, i) = 0.5 * h;
      continue;
    }
    const Index b = first[seg(i)], e = last[seg(i)];
    const int w = static_cast<int>(std::min<Index>(4, e - b + 1));
    const Index s = std::clamp<Index>(i - 1, b, e - w + 1);
    start_(i) = s;
    width_(i) = w;
    // weights = h * V^{-T} m with V_jk = z_j^k, m_k = 1/(k+1), z = (x - x_i)/h
    Eigen::MatrixXd V(w, w);
    Eigen::VectorXd m(w);
    for (int j = 0; j < w; ++j) {
      const double z = (x_(s + j) - x_(i)) / h;
      double p = 1.0;
      for (int k = 0; k < w; ++k) {
        V(j, k) = p;
        p *= z;
      }
      m(j) = 1.0 / (j + 1);
    }
    const Eigen::VectorXd wt = V.transpose().partialPivLu().solve(m);
    for (int j = 0; j < w; ++j) weights_(j, i) = h * wt(j);
  }
}

Index XiGrid::cell_of(double xi) const {
  const Index n = x_.size();
  const double* begin = x_.data();
  const double* it = std::upper_bound(begin, begin + n, xi);
  Index i = static_cast<Index>(it - begin) - 1;
  return std::clamp<Index>(i, 0, n - 2);
}

double XiGrid::cell_integral(const Eigen::ArrayXd& f, Index cell) const {
  if (start_(cell) < 0) return weights_(0, cell) * f(cell) + weights_(1, cell) * f(cell + 1);
  double sum = 0.0;
  for (int j = 0; j < width_(cell); ++j) sum += weights_(j, cell) * f(start_(cell) + j);
  return sum;
}

Eigen::ArrayXd XiGrid::cumulative(const Eigen::ArrayXd& f) const {
  Eigen::ArrayXd out(x_.size());
  out(0) = 0.0;
  for (Index i = 0; i + 1 < x_.size(); ++i) out(i + 1) = out(i) + cell_integral(f, i);
  return out;
}

double XiGrid::integrate(const Eigen::ArrayXd& f) const {
  double sum = 0.0;
  for (Index i = 0; i + 1 < x_.size(); ++i) sum += cell_integral(f, i);
  return sum;
}

double XiGrid::interpolate(const Eigen::ArrayXd& f, double xi) const {
  const Index i = cell_of(xi);
  if (start_(i) < 0) {
    const double s = (xi - x_(i)) / (x_(i + 1) - x_(i));
    return (1.0 - s) * f(i) + s * f(i + 1);
  }
  const Index b = start_(i);
  const int w = width_(i);
  double sum = 0.0;
  for (int j = 0; j < w; ++j) {
    double basis = 1.0;
    for (int k = 0; k < w; ++k) {
      if (k != j) basis *= (xi - x_(b + k)) / (x_(b + j) - x_(b + k));
    }
    sum += basis * f(b + j);
  }
  return sum;
}

double hermite_value(double f0, double f1, double d0, double d1, double h, double s) {
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * h * d0 +
         (-2 * s3 + 3 * s2) * f1 + (s3 - s2) * h * d1;
}

double hermite_slope(double f0, double f1, double d0, double d1, double h, double s) {
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * f0 + (-6 * s2 + 6 * s) * f1) / h +
         (3 * s2 - 4 * s + 1) * d0 + (3 * s2 - 2 * s) * d1;
}

}  // namespace peakon
