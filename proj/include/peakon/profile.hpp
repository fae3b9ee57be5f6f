#ifndef PEAKON_PROFILE_HPP_
#define PEAKON_PROFILE_HPP_

#include <vector>

#include <Eigen/Core>

namespace peakon {

/// Lagrangian variables at one (t, xi).
struct LagrangianSample {
  double y = 0;      // characteristic
  double y_xi = 0;
  double U = 0;      // velocity along the characteristic
  double U_xi = 0;
  double h = 0;      // energy density carried by nu
  double h_bar = 0;  // energy density carried by mu
};

/// Lagrangian state sampled on a label grid at a fixed time.
///
/// `kinks` lists the labels where the fields may lose smoothness (peak labels,
/// ends of a collapsed interval); grids should not place nodes on them.
struct LagrangianProfile {
  double t = 0;
  Eigen::ArrayXd xi;
  Eigen::ArrayXd y;
  Eigen::ArrayXd y_xi;
  Eigen::ArrayXd U;
  Eigen::ArrayXd U_xi;
  Eigen::ArrayXd h;
  Eigen::ArrayXd h_bar;
  std::vector<double> kinks;

  LagrangianProfile() = default;
  LagrangianProfile(double time, Eigen::ArrayXd labels, std::vector<double> kink_labels)
      : t(time), xi(std::move(labels)), kinks(std::move(kink_labels)) {
    const Eigen::Index n = xi.size();
    y.setZero(n);
    y_xi.setZero(n);
    U.setZero(n);
    U_xi.setZero(n);
    h.setZero(n);
    h_bar.setZero(n);
  }

  Eigen::Index size() const { return xi.size(); }

  LagrangianSample sample(Eigen::Index i) const {
    return {y(i), y_xi(i), U(i), U_xi(i), h(i), h_bar(i)};
  }

  void set(Eigen::Index i, const LagrangianSample& s) {
    y(i) = s.y;
    y_xi(i) = s.y_xi;
    U(i) = s.U;
    U_xi(i) = s.U_xi;
    h(i) = s.h;
    h_bar(i) = s.h_bar;
  }
};

}  // namespace peakon

#endif  // PEAKON_PROFILE_HPP_
