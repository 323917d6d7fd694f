#pragma once

#include <Eigen/Dense>
#include <vector>

namespace iim {

/// Closed periodic cubic spline through sample points, parameterized by
/// theta in [0, 2pi) with uniform knot spacing.
class PeriodicSpline {
 public:
  explicit PeriodicSpline(std::vector<Eigen::Vector2d> points);

  Eigen::Vector2d position(double theta) const;
  Eigen::Vector2d derivative(double theta) const;
  Eigen::Vector2d second_derivative(double theta) const;
  int size() const { return static_cast<int>(points_.size()); }

 private:
  void solve_second_derivatives();

  std::vector<Eigen::Vector2d> points_;
  std::vector<Eigen::Vector2d> m_;  // second derivatives at knots
  double dt_ = 0.0;                 // knot spacing in theta
};

}  // namespace iim
