#include "iim/force.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <unsupported/Eigen/FFT>
#include <vector>

namespace iim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

namespace {

double spectral_derivative_of_samples(const std::function<double(double)>& fn, double theta) {
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

}  // namespace

double ForceDensity::tangential_derivative(double theta, double t) const {
  return spectral_derivative_of_samples(
      [&](double th) { return tangential_component(th, t); }, theta);
}

double ForceDensity::normal_derivative(double theta, double t) const {
  return spectral_derivative_of_samples(
      [&](double th) { return normal_component(th, t); }, theta);
}

Vec2 NamedProfileForce::at(double theta, double t) const {
  (void)t;
  const Vec2 n = geometry_->normal(theta, t);
  const Vec2 tg = geometry_->tangent(theta, t);
  const double fn = params_.normal_amp + params_.normal_cos_amp * std::cos(params_.normal_mode * theta);
  const double ft = params_.tangential_const_amp +
                    params_.tangential_amp * std::sin(params_.tangential_mode * theta);
  return fn * n + ft * tg;
}

double NamedProfileForce::tangential_derivative(double theta, double t) const {
  (void)t;
  return params_.tangential_amp * params_.tangential_mode *
         std::cos(params_.tangential_mode * theta);
}

double NamedProfileForce::normal_derivative(double theta, double t) const {
  (void)t;
  return -params_.normal_cos_amp * params_.normal_mode * std::sin(params_.normal_mode * theta);
}

double surface_divergence_ftan(const InterfaceGeometry& geometry, const ForceDensity& force,
                               double theta, double t) {
  return force.tangential_derivative(theta, t) / geometry.metric(theta, t);
}

}  // namespace iim
