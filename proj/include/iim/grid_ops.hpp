#pragma once

#include "iim/grid.hpp"

namespace iim {

namespace detail {

/// out(i, j) = in(wrap(i + sx), wrap(j + sy))
template <typename Array>
Array periodic_shift(const Array& in, int sx, int sy) {
  const int m = static_cast<int>(in.rows());
  auto norm = [m](int s) {
    s %= m;
    return s < 0 ? s + m : s;
  };
  sx = norm(sx);
  sy = norm(sy);
  Array out(m, m);
  // rows
  Array tmp(m, m);
  tmp.topRows(m - sx) = in.bottomRows(m - sx);
  tmp.bottomRows(sx) = in.topRows(sx);
  // cols
  out.leftCols(m - sy) = tmp.rightCols(m - sy);
  out.rightCols(sy) = tmp.leftCols(sy);
  return out;
}

}  // namespace detail

template <typename T>
GridFunction<T> shifted(const GridFunction<T>& f, int sx, int sy) {
  return {f.spec(), detail::periodic_shift(f.values(), sx, sy)};
}

/// (f(j + e_axis) - f(j - e_axis)) / (2h), periodic.
template <typename T>
GridFunction<T> centered_diff(const GridFunction<T>& f, int axis) {
  const int sx = axis == 0 ? 1 : 0;
  const int sy = axis == 0 ? 0 : 1;
  const T scale = T(1) / (T(2) * f.spec().spacing());
  return {f.spec(),
          (detail::periodic_shift(f.values(), sx, sy) -
           detail::periodic_shift(f.values(), -sx, -sy)) *
              scale};
}

template <typename T>
GridFunction<T> forward_diff(const GridFunction<T>& f, int axis) {
  const int sx = axis == 0 ? 1 : 0;
  const int sy = axis == 0 ? 0 : 1;
  const T scale = T(1) / f.spec().spacing();
  return {f.spec(), (detail::periodic_shift(f.values(), sx, sy) - f.values()) * scale};
}

template <typename T>
GridFunction<T> backward_diff(const GridFunction<T>& f, int axis) {
  const int sx = axis == 0 ? 1 : 0;
  const int sy = axis == 0 ? 0 : 1;
  const T scale = T(1) / f.spec().spacing();
  return {f.spec(), (f.values() - detail::periodic_shift(f.values(), -sx, -sy)) * scale};
}

/// Standard 5-point Laplacian.
template <typename T>
GridFunction<T> laplacian_h(const GridFunction<T>& f) {
  const T scale = T(1) / (f.spec().spacing() * f.spec().spacing());
  const auto& v = f.values();
  return {f.spec(), (detail::periodic_shift(v, 1, 0) + detail::periodic_shift(v, -1, 0) +
                     detail::periodic_shift(v, 0, 1) + detail::periodic_shift(v, 0, -1) -
                     T(4) * v) *
                        scale};
}

/// Wide Laplacian: second differences with step 2h and denominator (2h)^2,
/// identical to divergence_h(gradient_h(f)).
template <typename T>
GridFunction<T> wide_laplacian(const GridFunction<T>& f) {
  const T two_h = T(2) * f.spec().spacing();
  const T scale = T(1) / (two_h * two_h);
  const auto& v = f.values();
  return {f.spec(), (detail::periodic_shift(v, 2, 0) + detail::periodic_shift(v, -2, 0) +
                     detail::periodic_shift(v, 0, 2) + detail::periodic_shift(v, 0, -2) -
                     T(4) * v) *
                        scale};
}

template <typename T>
VectorGridFunction<T> gradient_h(const GridFunction<T>& f) {
  return {centered_diff(f, 0), centered_diff(f, 1)};
}

template <typename T>
GridFunction<T> divergence_h(const VectorGridFunction<T>& v) {
  return centered_diff(v[0], 0) + centered_diff(v[1], 1);
}

template <typename T>
T mean(const GridFunction<T>& f) {
  return f.mean();
}

template <typename T>
GridFunction<T> subtract_mean(const GridFunction<T>& f) {
  return {f.spec(), f.values() - f.mean()};
}

/// Pointwise advection u . grad_h(w), one output component per component of w.
template <typename T>
VectorGridFunction<T> advect(const VectorGridFunction<T>& u, const VectorGridFunction<T>& w) {
  VectorGridFunction<T> out(u.spec());
  for (int c = 0; c < 2; ++c) {
    out[c] = {u.spec(), u[0].values() * centered_diff(w[c], 0).values() +
                            u[1].values() * centered_diff(w[c], 1).values()};
  }
  return out;
}

}  // namespace iim
