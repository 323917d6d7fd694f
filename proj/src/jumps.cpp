#include "iim/jumps.hpp"

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/FFT>
#include <vector>

namespace iim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Spectral derivative of a smooth 2pi-periodic scalar function at one point.
double spectral_theta_derivative(const std::function<double(double)>& fn, double theta) {
  const int n = 256;
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) samples[i] = fn(kTwoPi * i / n);
  thread_local Eigen::FFT<double> fft;
  std::vector<std::complex<double>> coeffs;
  fft.fwd(coeffs, samples);
  std::complex<double> acc = 0.0;
  for (int k = -n / 2 + 1; k < n / 2; ++k) {
    const int idx = k >= 0 ? k : k + n;
    acc += coeffs[idx] / static_cast<double>(n) * std::complex<double>(0.0, k) *
           std::polar(1.0, k * theta);
  }
  return acc.real();
}

Mat2 symmetric_from_frame(const Vec2& n, const Vec2& tg, double h_nn, double h_nt, double h_tt) {
  return h_nn * n * n.transpose() + h_nt * (n * tg.transpose() + tg * n.transpose()) +
         h_tt * tg * tg.transpose();
}

}  // namespace

Vec2 VelocityProbe::value_at(const Vec2& p) const {
  if (!u) return Vec2::Zero();
  const GridSpec& spec = (*u)[0].spec();
  const double h = spec.spacing();
  const double fx = (p.x() + spec.half_period) / h;
  const double fy = (p.y() + spec.half_period) / h;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  const double ax = fx - ix, ay = fy - iy;
  Vec2 out;
  for (int c = 0; c < 2; ++c) {
    const auto& g = (*u)[c];
    out[c] = (1 - ax) * (1 - ay) * g.at(ix, iy) + ax * (1 - ay) * g.at(ix + 1, iy) +
             (1 - ax) * ay * g.at(ix, iy + 1) + ax * ay * g.at(ix + 1, iy + 1);
  }
  return out;
}

Mat2 VelocityProbe::gradient_near(const Vec2& p, const Vec2& offset) const {
  if (!u) return Mat2::Zero();
  const GridSpec& spec = (*u)[0].spec();
  const double h = spec.spacing();
  const Vec2 q = p + offset;
  const double fx = (q.x() + spec.half_period) / h;
  const double fy = (q.y() + spec.half_period) / h;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  const double ax = fx - ix, ay = fy - iy;
  Mat2 out;
  for (int c = 0; c < 2; ++c) {
    const auto& g = (*u)[c];
    auto dx_at = [&](int i, int j) { return (g.at(i + 1, j) - g.at(i - 1, j)) / (2 * h); };
    auto dy_at = [&](int i, int j) { return (g.at(i, j + 1) - g.at(i, j - 1)) / (2 * h); };
    out(c, 0) = (1 - ax) * (1 - ay) * dx_at(ix, iy) + ax * (1 - ay) * dx_at(ix + 1, iy) +
                (1 - ax) * ay * dx_at(ix, iy + 1) + ax * ay * dx_at(ix + 1, iy + 1);
    out(c, 1) = (1 - ax) * (1 - ay) * dy_at(ix, iy) + ax * (1 - ay) * dy_at(ix + 1, iy) +
                (1 - ax) * ay * dy_at(ix, iy + 1) + ax * ay * dy_at(ix + 1, iy + 1);
  }
  return out;
}

JumpSet jumps_from_force(const InterfaceGeometry& geometry, const ForceDensity& force,
                         const VelocityProbe& state_velocity, double theta, double t,
                         const DivBodyForceJump& div_g_jump) {
  const Vec2 n = geometry.normal(theta, t);
  const Vec2 tg = geometry.tangent(theta, t);
  const Vec2 x_star = geometry.position(theta, t);
  const double metric = geometry.metric(theta, t);

  const double ft = force.tangential_component(theta, t);
  const double fn = force.normal_component(theta, t);
  const double dft = force.tangential_derivative(theta, t);

  JumpSet j;
  // first-derivative relations
  j.jump_Du = -ft * tg * n.transpose();
  j.jump_p = fn;
  const double dpdn = dft / metric;  // surface divergence of f_tan
  const double dpds = force.normal_derivative(theta, t) / metric;
  j.jump_Dp = dpdn * n + dpds * tg;

  // the prescribed motion carries the material jump
  const double un = geometry.velocity(theta, t).dot(n);
  j.jump_ut = un * ft * tg;
  j.jump_advection = -j.jump_ut;

  // velocity Hessian jumps: tangential derivative of the first-derivative
  // relation gives H_i t; the trace comes from the momentum balance
  const Vec2 jump_lap_u = j.jump_ut + j.jump_advection + j.jump_Dp;
  for (int i = 0; i < 2; ++i) {
    Vec2 b;
    for (int comp = 0; comp < 2; ++comp) {
      b[comp] = spectral_theta_derivative(
                    [&](double th) {
                      const Vec2 nn = geometry.normal(th, t);
                      const Vec2 tt = geometry.tangent(th, t);
                      return -force.tangential_component(th, t) * tt[i] * nn[comp];
                    },
                    theta) /
                metric;
    }
    const double h_nt = n.dot(b);
    const double h_tt = tg.dot(b);
    const double h_nn = jump_lap_u[i] - h_tt;
    j.jump_D2u[i] = symmetric_from_frame(n, tg, h_nn, h_nt, h_tt);
  }

  // mean one-sided velocity gradient from the grid state, sampled clear of
  // the irregular band on each side; the O(h) offset bias is removed with the
  // Hessian jump just computed
  Mat2 g_mean = Mat2::Zero();
  Vec2 u_gamma = state_velocity.value_at(x_star);
  if (state_velocity.u) {
    const double delta = 2.5 * (*state_velocity.u)[0].spec().spacing();
    g_mean = 0.5 * (state_velocity.gradient_near(x_star, delta * n) +
                    state_velocity.gradient_near(x_star, -delta * n));
    for (int i = 0; i < 2; ++i)
      g_mean.row(i) -= (0.5 * delta) * (j.jump_D2u[i] * n).transpose();
  }

  // pressure Hessian: tangential derivative of [grad p], trace from the
  // Poisson balance [lap p] = -[tr((grad u)^2)] + [div g]
  Vec2 bq;
  for (int comp = 0; comp < 2; ++comp) {
    bq[comp] = spectral_theta_derivative(
                   [&](double th) {
                     const Vec2 nn = geometry.normal(th, t);
                     const Vec2 tt = geometry.tangent(th, t);
                     const double m = geometry.metric(th, t);
                     const double pn = force.tangential_derivative(th, t) / m;
                     const double ps = force.normal_derivative(th, t) / m;
                     return pn * nn[comp] + ps * tt[comp];
                   },
                   theta) /
               metric;
  }
  double jump_lap_p = -2.0 * (j.jump_Du * g_mean).trace();
  if (div_g_jump) jump_lap_p += div_g_jump(theta, t);
  const double q_nt = n.dot(bq);
  const double q_tt = tg.dot(bq);
  const double q_nn = jump_lap_p - q_tt;
  j.jump_D2p = symmetric_from_frame(n, tg, q_nn, q_nt, q_tt);

  // advection-derivative jumps: [G^2] = [G] Gm + Gm [G] plus the Hessian part
  Mat2 dadv = j.jump_Du * g_mean + g_mean * j.jump_Du;
  for (int i = 0; i < 2; ++i) dadv.row(i) += (j.jump_D2u[i] * u_gamma).transpose();
  j.jump_Dadv = dadv;
  return j;
}

}  // namespace iim
