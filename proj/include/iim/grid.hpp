#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>

#include "iim/errors.hpp"

namespace iim {

/// Square periodic grid covering [-L, L)^2 with nodes x_j = j h, j in [-N, N),
/// spacing h = L/N. Storage index s in [0, 2N) maps to j = s - N.
struct GridSpec {
  int n = 0;                              // L/h; half of the per-axis node count
  double half_period = std::numbers::pi;  // L

  GridSpec() = default;
  GridSpec(int n_, double half_period_ = std::numbers::pi)
      : n(n_), half_period(half_period_) {
    if (n < 4 || n % 2 != 0)
      throw Error("GridSpec: n must be even and >= 4, got " + std::to_string(n));
    if (!(half_period > 0)) throw Error("GridSpec: half_period must be positive");
  }

  int points() const { return 2 * n; }  // nodes per axis
  double spacing() const { return half_period / n; }
  double coord(int idx) const { return (idx - n) * spacing(); }
  int wrap(int idx) const {
    const int m = points();
    idx %= m;
    return idx < 0 ? idx + m : idx;
  }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.n == b.n && a.half_period == b.half_period;
  }
};

/// Periodic scalar field on the node grid. Values are stored for exactly one
/// period; all indexing wraps.
template <typename Scalar = double>
class GridFunction {
 public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  GridFunction() = default;
  explicit GridFunction(const GridSpec& spec)
      : spec_(spec), values_(Array::Zero(spec.points(), spec.points())) {}
  GridFunction(const GridSpec& spec, Array values)
      : spec_(spec), values_(std::move(values)) {
    if (values_.rows() != spec_.points() || values_.cols() != spec_.points())
      throw Error("GridFunction: value array does not match spec");
  }

  const GridSpec& spec() const { return spec_; }
  int points() const { return spec_.points(); }

  Array& values() { return values_; }
  const Array& values() const { return values_; }

  Scalar& operator()(int ix, int iy) { return values_(ix, iy); }
  const Scalar& operator()(int ix, int iy) const { return values_(ix, iy); }

  /// Periodic (wrapping) access.
  const Scalar& at(int ix, int iy) const {
    return values_(spec_.wrap(ix), spec_.wrap(iy));
  }
  Scalar& at(int ix, int iy) { return values_(spec_.wrap(ix), spec_.wrap(iy)); }

  Scalar mean() const { return values_.mean(); }
  double max_abs() const { return values_.abs().maxCoeff(); }
  bool all_finite() const { return values_.isFinite().all(); }

  template <typename F>
  static GridFunction from_function(const GridSpec& spec, F&& f) {
    GridFunction g(spec);
    const int m = spec.points();
    for (int iy = 0; iy < m; ++iy)
      for (int ix = 0; ix < m; ++ix)
        g(ix, iy) = f(spec.coord(ix), spec.coord(iy));
    return g;
  }

  GridFunction& operator+=(const GridFunction& o) {
    values_ += o.values_;
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    values_ -= o.values_;
    return *this;
  }
  GridFunction& operator*=(Scalar c) {
    values_ *= c;
    return *this;
  }

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(Scalar c, GridFunction a) { return a *= c; }
  friend GridFunction operator*(GridFunction a, Scalar c) { return a *= c; }
  friend GridFunction operator-(GridFunction a) {
    a.values_ = -a.values_;
    return a;
  }

 private:
  GridSpec spec_;
  Array values_;
};

/// d = 2 vector field; both components share one GridSpec.
template <typename Scalar = double>
class VectorGridFunction {
 public:
  VectorGridFunction() = default;
  explicit VectorGridFunction(const GridSpec& spec)
      : comps_{GridFunction<Scalar>(spec), GridFunction<Scalar>(spec)} {}
  VectorGridFunction(GridFunction<Scalar> x, GridFunction<Scalar> y)
      : comps_{std::move(x), std::move(y)} {
    if (!(comps_[0].spec() == comps_[1].spec()))
      throw Error("VectorGridFunction: components on different specs");
  }

  const GridSpec& spec() const { return comps_[0].spec(); }
  GridFunction<Scalar>& operator[](int c) { return comps_[c]; }
  const GridFunction<Scalar>& operator[](int c) const { return comps_[c]; }

  double max_abs() const { return std::max(comps_[0].max_abs(), comps_[1].max_abs()); }
  bool all_finite() const { return comps_[0].all_finite() && comps_[1].all_finite(); }

  VectorGridFunction& operator+=(const VectorGridFunction& o) {
    comps_[0] += o.comps_[0];
    comps_[1] += o.comps_[1];
    return *this;
  }
  VectorGridFunction& operator-=(const VectorGridFunction& o) {
    comps_[0] -= o.comps_[0];
    comps_[1] -= o.comps_[1];
    return *this;
  }
  VectorGridFunction& operator*=(Scalar c) {
    comps_[0] *= c;
    comps_[1] *= c;
    return *this;
  }
  friend VectorGridFunction operator+(VectorGridFunction a, const VectorGridFunction& b) {
    return a += b;
  }
  friend VectorGridFunction operator-(VectorGridFunction a, const VectorGridFunction& b) {
    return a -= b;
  }
  friend VectorGridFunction operator*(Scalar c, VectorGridFunction a) { return a *= c; }

 private:
  std::array<GridFunction<Scalar>, 2> comps_;
};

using GridFunctionD = GridFunction<double>;
using VectorGridFunctionD = VectorGridFunction<double>;

}  // namespace iim
