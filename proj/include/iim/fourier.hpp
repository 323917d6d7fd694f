#pragma once

#include <complex>
#include <unsupported/Eigen/FFT>

#include "iim/grid.hpp"

namespace iim {

/// Discrete Fourier coefficients of a periodic grid function. Coefficients are
/// stored FFT-ordered; storage index i maps to frequency k = i for i < N and
/// k = i - 2N otherwise, so k ranges over [-N, N).
template <typename Scalar = double>
class Spectrum {
 public:
  using Complex = std::complex<Scalar>;
  using Array = Eigen::Array<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  Spectrum() = default;
  explicit Spectrum(const GridSpec& spec)
      : spec_(spec), coeffs_(Array::Zero(spec.points(), spec.points())) {}
  Spectrum(const GridSpec& spec, Array coeffs) : spec_(spec), coeffs_(std::move(coeffs)) {}

  const GridSpec& spec() const { return spec_; }
  Array& coeffs() { return coeffs_; }
  const Array& coeffs() const { return coeffs_; }

  int freq(int idx) const { return idx < spec_.n ? idx : idx - spec_.points(); }
  int index_of(int k) const { return spec_.wrap(k); }

  /// Coefficient at integer frequency pair (periodic in each k with period 2N).
  Complex at(int kx, int ky) const { return coeffs_(index_of(kx), index_of(ky)); }
  Complex& at(int kx, int ky) { return coeffs_(index_of(kx), index_of(ky)); }

  Scalar l2() const { return std::sqrt(coeffs_.abs2().sum()); }

 private:
  GridSpec spec_;
  Array coeffs_;
};

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  thread_local Eigen::FFT<Scalar> engine;
  return engine;
}

/// In-place 2D FFT over columns then rows. forward: unnormalized;
/// inverse: scaled by 1/M per axis.
template <typename Scalar>
void fft2(Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>& a, bool forward) {
  using Vec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  auto& engine = fft_engine<Scalar>();
  const int m = static_cast<int>(a.rows());
  Vec in(m), out(m);
  for (int c = 0; c < m; ++c) {
    in = a.col(c).matrix();
    if (forward)
      engine.fwd(out, in);
    else
      engine.inv(out, in);
    a.col(c) = out.array();
  }
  for (int r = 0; r < m; ++r) {
    in = a.row(r).matrix().transpose();
    if (forward)
      engine.fwd(out, in);
    else
      engine.inv(out, in);
    a.row(r) = out.array().transpose();
  }
}

/// Phase factor translating index-space transforms to the physical origin
/// x_j = (j - N) h: multiply coefficient (kx, ky) by (-1)^(kx + ky), which in
/// storage indices is the same checkerboard.
template <typename Array>
void apply_origin_phase(Array& a) {
  const int m = static_cast<int>(a.rows());
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      if ((i + j) % 2 != 0) a(i, j) = -a(i, j);
}

}  // namespace detail

/// Forward transform: F(k) = sum_j f(x_j) exp(-i k . x_j pi / L).
template <typename Scalar>
Spectrum<Scalar> dft(const GridFunction<Scalar>& f) {
  typename Spectrum<Scalar>::Array a = f.values().template cast<std::complex<Scalar>>();
  detail::fft2(a, true);
  detail::apply_origin_phase(a);
  return {f.spec(), std::move(a)};
}

/// Inverse transform (real part): f(x_j) = (2N)^-2 sum_k F(k) exp(i k . x_j pi / L).
template <typename Scalar>
GridFunction<Scalar> idft(const Spectrum<Scalar>& s) {
  typename Spectrum<Scalar>::Array a = s.coeffs();
  detail::apply_origin_phase(a);
  detail::fft2(a, false);
  return {s.spec(), a.real()};
}

}  // namespace iim
