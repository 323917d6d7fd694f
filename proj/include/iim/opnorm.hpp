#pragma once

#include <array>

#include "iim/fourier.hpp"
#include "iim/grid_ops.hpp"
#include "iim/symbols.hpp"

namespace iim {

/// Exact induced maximum-norm of the multiplier operator: the operator is a
/// discrete convolution with kernel a_j = inverse transform of the symbol
/// samples, and for convolutions the induced inf-norm equals sum_j |a_j|
/// (attained by the matching sign vector).
inline double maxnorm_of_multiplier(const Symbol& symbol, const GridSpec& spec) {
  Spectrum<double> s(spec);
  const int m = spec.points();
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) s.coeffs()(i, j) = symbol(s.freq(i), s.freq(j));
  detail::fft2(s.coeffs(), false);  // kernel, up to an irrelevant translation
  return s.coeffs().abs().sum();
}

/// Induced maximum-norm of a 2x2 matrix of multipliers acting on vector grid
/// functions with the componentwise sup norm: max_i sum_l ||kernel_il||_l1.
inline double maxnorm_of_matrix_multiplier(const std::array<std::array<Symbol, 2>, 2>& sym,
                                           const GridSpec& spec) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    double row = 0.0;
    for (int l = 0; l < 2; ++l) row += maxnorm_of_multiplier(sym[i][l], spec);
    worst = std::max(worst, row);
  }
  return worst;
}

/// Upper bound on the multiplier operator's maximum norm from lattice sums of
/// |(D+)^s sigma|^2 and |sigma|^2, with the constants tracked through the
/// Sobolev-style splitting (d = 2, L = pi normalization):
///
///   sum|a_j| <= C_s M1^(1/s) M0^(1 - 1/s),
///   M0^2 = (2pi)^-2 h^2 sum_k |sigma|^2,
///   M1^2 <= M0^2 + 2^(s-1) (pi/2)^(2s) (2pi)^-2 h^2 sum_{v,k} |(Dv+)^s sigma|^2,
///   C_s  = sqrt(pi/(s-1)) + sqrt(pi) (2 sqrt(2) + 1).
///
/// The bound dominates maxnorm_of_multiplier for every symbol.
inline double multiplier_norm_bound(const Symbol& symbol, const GridSpec& spec, int s_order) {
  if (s_order < 2) throw Error("multiplier_norm_bound: need integer s > d/2, i.e. s >= 2");
  const int m = spec.points();
  const double h = std::numbers::pi / spec.n;  // phase step; equals spacing when L = pi

  // sigma samples on the lattice
  Eigen::ArrayXXcd sig(m, m);
  auto freq = [&](int idx) { return idx < spec.n ? idx : idx - m; };
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) sig(i, j) = symbol(freq(i), freq(j));

  double sum_sigma2 = sig.abs2().sum();

  double sum_diff2 = 0.0;
  for (int axis = 0; axis < 2; ++axis) {
    Eigen::ArrayXXcd d = sig;
    for (int step = 0; step < s_order; ++step)
      d = (detail::periodic_shift(d, axis == 0 ? 1 : 0, axis == 0 ? 0 : 1) - d) / h;
    sum_diff2 += d.abs2().sum();
  }

  const double inv4pi2 = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  const double m0_sq = inv4pi2 * h * h * sum_sigma2;
  if (m0_sq == 0.0) return 0.0;
  const double weight = std::pow(2.0, s_order - 1) *
                        std::pow(std::numbers::pi / 2.0, 2.0 * s_order);
  const double m1_sq = m0_sq + weight * inv4pi2 * h * h * sum_diff2;

  const double c_s = std::sqrt(std::numbers::pi / (s_order - 1)) +
                     std::sqrt(std::numbers::pi) * (2.0 * std::numbers::sqrt2 + 1.0);
  const double s = s_order;
  return c_s * std::pow(m1_sq, 0.5 / s) * std::pow(m0_sq, 0.5 * (1.0 - 1.0 / s));
}

}  // namespace iim
