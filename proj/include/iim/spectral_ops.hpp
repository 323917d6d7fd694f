#pragma once

#include "iim/fourier.hpp"
#include "iim/grid_ops.hpp"
#include "iim/symbols.hpp"

namespace iim {

/// idft(symbol * dft(f)).
inline GridFunctionD apply_multiplier(const GridFunctionD& f, const Symbol& symbol) {
  Spectrum<double> s = dft(f);
  auto& c = s.coeffs();
  const int m = f.points();
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) c(i, j) *= symbol(s.freq(i), s.freq(j));
  return idft(s);
}

namespace detail {
inline void require_mean_zero(const GridFunctionD& f, const char* who) {
  const double tol = 1e-10;
  const double scale = f.max_abs();
  if (std::abs(f.mean()) > tol * scale && scale > 0.0)
    throw NotMeanZero(std::string(who) + ": input has nonzero mean");
}
}  // namespace detail

/// Mean-zero g with laplacian_h(g) = f. Requires mean(f) ~ 0.
inline GridFunctionD solve_laplacian_h(const GridFunctionD& f) {
  detail::require_mean_zero(f, "solve_laplacian_h");
  return apply_multiplier(f, symbols::inv_sigma_h(f.spec()));
}

/// Inverse of the wide Laplacian on its range; the 2^d null-mode coefficients
/// of the output are zero. Inputs must carry no null-mode content.
inline GridFunctionD solve_wide_laplacian(const GridFunctionD& f) {
  Spectrum<double> s = dft(f);
  const int n = f.spec().n;
  double null_content = 0.0;
  for (int kx : {0, -n})
    for (int ky : {0, -n}) null_content += std::norm(s.at(kx, ky));
  null_content = std::sqrt(null_content);
  const double total = s.l2();
  if (total > 0.0 && null_content > 1e-10 * total)
    throw NotInRange("solve_wide_laplacian: input has null-mode content " +
                     std::to_string(null_content / total));
  Symbol inv = symbols::inv_sigma_0(f.spec());
  auto& c = s.coeffs();
  const int m = f.points();
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) c(i, j) *= inv(s.freq(i), s.freq(j));
  return idft(s);
}

/// Exact discrete projection P0 v = v - grad_h inv(wide_laplacian) div_h v.
/// The centered divergence lands in the range of the wide Laplacian
/// identically, so no null-mode check is needed here.
inline VectorGridFunctionD project_P0(const VectorGridFunctionD& v) {
  GridFunctionD phi = apply_multiplier(divergence_h(v), symbols::inv_sigma_0(v.spec()));
  return v - gradient_h(phi);
}

/// Approximate projection using inv(laplacian_h) instead.
inline VectorGridFunctionD project_tildeP(const VectorGridFunctionD& v) {
  GridFunctionD phi = solve_laplacian_h(subtract_mean(divergence_h(v)));
  return v - gradient_h(phi);
}

/// Multiplier (sigma - sigma_0)/sigma, zero at k = 0. Requires mean(f) ~ 0.
inline GridFunctionD apply_A(const GridFunctionD& f) {
  detail::require_mean_zero(f, "apply_A");
  return apply_multiplier(f, symbols::op_A(f.spec()));
}

/// R f with R = (I - (tau/2) laplacian_h)^-1.
inline GridFunctionD cn_resolvent(const GridFunctionD& f, double tau) {
  if (!(tau > 0)) throw Error("cn_resolvent: tau must be positive");
  return apply_multiplier(f, symbols::cn_resolvent(f.spec(), tau));
}

/// S^n f with S the Crank-Nicolson step operator.
inline GridFunctionD cn_power(const GridFunctionD& f, double tau, int n) {
  if (!(tau > 0) || n < 0) throw Error("cn_power: need tau > 0 and n >= 0");
  return apply_multiplier(f, symbols::cn_step(f.spec(), tau).pow(n));
}

}  // namespace iim
