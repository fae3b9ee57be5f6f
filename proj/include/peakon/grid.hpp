#ifndef PEAKON_GRID_HPP_
#define PEAKON_GRID_HPP_

#include <span>
#include <vector>

#include <Eigen/Core>

namespace peakon {

using Eigen::Index;

/// Label grid on [lo, hi] graded geometrically towards each kink.
///
/// On either side of a kink the nodes sit at offsets min_offset / ratio^k,
/// continuing until the spacing reaches the base spacing dx; the rest of the
/// interval is uniform with spacing at most dx. dx is chosen so that the node
/// count is at most `n_total` and as close to it as possible. No node is placed on a kink.
Eigen::ArrayXd make_xi_grid(double lo, double hi, Index n_total,
                            std::span<const double> kinks, double ratio = 0.93,
                            double min_offset = 1e-7);

/// Piecewise-smooth calculus on a strictly increasing grid.
///
/// Sampled functions are assumed smooth between consecutive kinks and may
/// jump across a kink. Cells inside a smooth segment are integrated and
/// interpolated with the cubic through four nodes of that segment (fourth
/// order); cells straddling a kink fall back to the trapezoid rule and
/// linear interpolation.
class XiGrid {
 public:
  XiGrid(Eigen::ArrayXd nodes, std::vector<double> kinks);

  const Eigen::ArrayXd& nodes() const { return x_; }
  std::span<const double> kinks() const { return kinks_; }
  Index size() const { return x_.size(); }

  /// Cell index i with x_i <= xi <= x_{i+1}, clamped to the grid.
  Index cell_of(double xi) const;
  bool straddles_kink(Index cell) const { return start_(cell) < 0; }

  double cell_integral(const Eigen::ArrayXd& f, Index cell) const;
  /// Running integral from the first node; entry 0 is zero.
  Eigen::ArrayXd cumulative(const Eigen::ArrayXd& f) const;
  double integrate(const Eigen::ArrayXd& f) const;
  double interpolate(const Eigen::ArrayXd& f, double xi) const;

 private:
  Eigen::ArrayXd x_;
  std::vector<double> kinks_;
  Eigen::Array<Index, Eigen::Dynamic, 1> start_;  // first stencil node, -1 on kink cells
  Eigen::ArrayXi width_;                           // stencil size (2..4)
  Eigen::ArrayXXd weights_;                        // 4 x cells
};

/// Cubic Hermite interpolant on a cell of width h, s in [0, 1].
double hermite_value(double f0, double f1, double d0, double d1, double h, double s);
/// d/dxi of the same interpolant.
double hermite_slope(double f0, double f1, double d0, double d1, double h, double s);

}  // namespace peakon

#endif  // PEAKON_GRID_HPP_
