#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "iim/grid.hpp"

namespace iim {

/// Fourier multiplier evaluated at integer frequencies, periodic in each
/// component with period 2N. The evaluator receives canonical k in [-N, N).
class Symbol {
 public:
  using Complex = std::complex<double>;
  using Fn = std::function<Complex(int, int)>;

  Symbol() = default;
  Symbol(GridSpec spec, Fn fn) : spec_(spec), fn_(std::move(fn)) {}

  const GridSpec& spec() const { return spec_; }

  Complex operator()(int kx, int ky) const {
    return fn_(canonical(kx), canonical(ky));
  }

  friend Symbol operator*(const Symbol& a, const Symbol& b) {
    return {a.spec_, [a, b](int kx, int ky) { return a(kx, ky) * b(kx, ky); }};
  }
  friend Symbol operator+(const Symbol& a, const Symbol& b) {
    return {a.spec_, [a, b](int kx, int ky) { return a(kx, ky) + b(kx, ky); }};
  }

  Symbol pow(int n) const {
    Symbol s = *this;
    return {spec_, [s, n](int kx, int ky) { return std::pow(s(kx, ky), n); }};
  }

 private:
  int canonical(int k) const {
    const int m = spec_.points();
    k %= m;
    if (k < 0) k += m;
    return k < spec_.n ? k : k - m;
  }

  GridSpec spec_;
  Fn fn_;
};

namespace symbols {

/// sigma(kh) = -(4/h^2) sum_v sin^2(k_v pi / (2N)); eigenvalue of laplacian_h.
inline Symbol sigma_h(const GridSpec& spec) {
  const double h = spec.spacing();
  const double w = std::numbers::pi / (2.0 * spec.n);
  return {spec, [h, w](int kx, int ky) -> std::complex<double> {
            const double sx = std::sin(kx * w), sy = std::sin(ky * w);
            return -(4.0 / (h * h)) * (sx * sx + sy * sy);
          }};
}

/// sigma_0(kh) = -(1/h^2) sum_v sin^2(k_v pi / N); eigenvalue of wide_laplacian.
inline Symbol sigma_0(const GridSpec& spec) {
  const double h = spec.spacing();
  const double w = std::numbers::pi / spec.n;
  return {spec, [h, w](int kx, int ky) -> std::complex<double> {
            const double sx = std::sin(kx * w), sy = std::sin(ky * w);
            return -(sx * sx + sy * sy) / (h * h);
          }};
}

/// 1/sigma with the k = 0 value set to zero.
inline Symbol inv_sigma_h(const GridSpec& spec) {
  Symbol s = sigma_h(spec);
  return {spec, [s](int kx, int ky) -> std::complex<double> {
            if (kx == 0 && ky == 0) return 0.0;
            return 1.0 / s(kx, ky);
          }};
}

/// 1/sigma_0 with all 2^d null modes (k_v in {0, -N}) set to zero.
inline Symbol inv_sigma_0(const GridSpec& spec) {
  Symbol s = sigma_0(spec);
  const int n = spec.n;
  return {spec, [s, n](int kx, int ky) -> std::complex<double> {
            const bool null_x = (kx == 0 || kx == -n);
            const bool null_y = (ky == 0 || ky == -n);
            if (null_x && null_y) return 0.0;
            return 1.0 / s(kx, ky);
          }};
}

/// A = (laplacian_h - wide_laplacian) inv(laplacian_h); zero at k = 0. In 2D the
/// multiplier equals (s1^4 + s2^4)/(s1^2 + s2^2) with s_v = sin(k_v pi / (2N)).
inline Symbol op_A(const GridSpec& spec) {
  const double w = std::numbers::pi / (2.0 * spec.n);
  return {spec, [w](int kx, int ky) -> std::complex<double> {
            if (kx == 0 && ky == 0) return 0.0;
            const double s1 = std::sin(kx * w), s2 = std::sin(ky * w);
            const double a = s1 * s1, b = s2 * s2;
            return (a * a + b * b) / (a + b);
          }};
}

/// Centered first difference along an axis: i sin(k pi / N) / h.
inline Symbol centered_diff(const GridSpec& spec, int axis) {
  const double h = spec.spacing();
  const double w = std::numbers::pi / spec.n;
  return {spec, [h, w, axis](int kx, int ky) -> std::complex<double> {
            const int k = axis == 0 ? kx : ky;
            return {0.0, std::sin(k * w) / h};
          }};
}

/// Forward difference along an axis: (exp(i k pi / N) - 1) / h.
inline Symbol forward_diff(const GridSpec& spec, int axis) {
  const double h = spec.spacing();
  const double w = std::numbers::pi / spec.n;
  return {spec, [h, w, axis](int kx, int ky) -> std::complex<double> {
            const int k = axis == 0 ? kx : ky;
            return (std::polar(1.0, k * w) - std::complex<double>(1.0, 0.0)) / h;
          }};
}

/// Crank-Nicolson resolvent R = (I - (tau/2) laplacian_h)^-1.
inline Symbol cn_resolvent(const GridSpec& spec, double tau) {
  Symbol s = sigma_h(spec);
  return {spec, [s, tau](int kx, int ky) {
            return 1.0 / (1.0 - 0.5 * tau * s(kx, ky));
          }};
}

/// Crank-Nicolson step S = (I + (tau/2) laplacian_h) R.
inline Symbol cn_step(const GridSpec& spec, double tau) {
  Symbol s = sigma_h(spec);
  return {spec, [s, tau](int kx, int ky) {
            const auto v = s(kx, ky);
            return (1.0 + 0.5 * tau * v) / (1.0 - 0.5 * tau * v);
          }};
}

inline Symbol identity(const GridSpec& spec) {
  return {spec, [](int, int) -> std::complex<double> { return 1.0; }};
}

}  // namespace symbols

}  // namespace iim
