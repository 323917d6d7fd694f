#include "iim/spline.hpp"

#include <cmath>
#include <numbers>

#include "iim/errors.hpp"

namespace iim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PeriodicSpline::PeriodicSpline(std::vector<Eigen::Vector2d> points) : points_(std::move(points)) {
  if (points_.size() < 4) throw GeometryDegenerate("spline needs at least 4 points");
  dt_ = kTwoPi / points_.size();
  solve_second_derivatives();
}

void PeriodicSpline::solve_second_derivatives() {
  // Cyclic tridiagonal system for natural periodic cubic splines:
  //   (dt/6) m_{i-1} + (2dt/3) m_i + (dt/6) m_{i+1} = (p_{i+1} - 2p_i + p_{i-1}) / dt
  const int n = size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd rhs(n, 2);
  for (int i = 0; i < n; ++i) {
    const int prev = (i + n - 1) % n, next = (i + 1) % n;
    a(i, prev) += dt_ / 6.0;
    a(i, i) += 2.0 * dt_ / 3.0;
    a(i, next) += dt_ / 6.0;
    rhs.row(i) = ((points_[next] - 2.0 * points_[i] + points_[prev]) / dt_).transpose();
  }
  Eigen::MatrixXd m = a.partialPivLu().solve(rhs);
  m_.resize(n);
  for (int i = 0; i < n; ++i) m_[i] = m.row(i).transpose();
}

Eigen::Vector2d PeriodicSpline::position(double theta) const {
  const int n = size();
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  const int i = std::min(static_cast<int>(t / dt_), n - 1);
  const int next = (i + 1) % n;
  const double s = t - i * dt_;
  const double a = (dt_ - s), b = s;
  return (a * a * a * m_[i] + b * b * b * m_[next]) / (6.0 * dt_) +
         (points_[i] / dt_ - m_[i] * dt_ / 6.0) * a + (points_[next] / dt_ - m_[next] * dt_ / 6.0) * b;
}

Eigen::Vector2d PeriodicSpline::derivative(double theta) const {
  const int n = size();
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  const int i = std::min(static_cast<int>(t / dt_), n - 1);
  const int next = (i + 1) % n;
  const double s = t - i * dt_;
  const double a = (dt_ - s), b = s;
  return (-3.0 * a * a * m_[i] + 3.0 * b * b * m_[next]) / (6.0 * dt_) -
         (points_[i] / dt_ - m_[i] * dt_ / 6.0) + (points_[next] / dt_ - m_[next] * dt_ / 6.0);
}

Eigen::Vector2d PeriodicSpline::second_derivative(double theta) const {
  const int n = size();
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  const int i = std::min(static_cast<int>(t / dt_), n - 1);
  const int next = (i + 1) % n;
  const double s = t - i * dt_;
  return (m_[i] * (dt_ - s) + m_[next] * s) / dt_;
}

}  // namespace iim
