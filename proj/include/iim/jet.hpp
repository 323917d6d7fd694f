#pragma once

#include <cmath>

#include "iim/errors.hpp"

namespace iim {

/// Second-order jet in two variables: value, gradient, and Hessian propagate
/// exactly through arithmetic and the elementary functions below. Used to
/// evaluate manufactured fields together with their first and second
/// derivatives without hand-written chain rules.
struct Jet2 {
  double v = 0.0;
  double dx = 0.0, dy = 0.0;
  double dxx = 0.0, dxy = 0.0, dyy = 0.0;

  Jet2() = default;
  Jet2(double value) : v(value) {}
  static Jet2 var_x(double x) {
    Jet2 j(x);
    j.dx = 1.0;
    return j;
  }
  static Jet2 var_y(double y) {
    Jet2 j(y);
    j.dy = 1.0;
    return j;
  }

  Jet2 operator-() const {
    Jet2 r;
    r.v = -v;
    r.dx = -dx;
    r.dy = -dy;
    r.dxx = -dxx;
    r.dxy = -dxy;
    r.dyy = -dyy;
    return r;
  }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v + b.v;
  r.dx = a.dx + b.dx;
  r.dy = a.dy + b.dy;
  r.dxx = a.dxx + b.dxx;
  r.dxy = a.dxy + b.dxy;
  r.dyy = a.dyy + b.dyy;
  return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v * b.v;
  r.dx = a.dx * b.v + a.v * b.dx;
  r.dy = a.dy * b.v + a.v * b.dy;
  r.dxx = a.dxx * b.v + 2.0 * a.dx * b.dx + a.v * b.dxx;
  r.dxy = a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy;
  r.dyy = a.dyy * b.v + 2.0 * a.dy * b.dy + a.v * b.dyy;
  return r;
}

/// u(f) with u', u'' supplied.
inline Jet2 compose(const Jet2& f, double u, double du, double ddu) {
  Jet2 r;
  r.v = u;
  r.dx = du * f.dx;
  r.dy = du * f.dy;
  r.dxx = ddu * f.dx * f.dx + du * f.dxx;
  r.dxy = ddu * f.dx * f.dy + du * f.dxy;
  r.dyy = ddu * f.dy * f.dy + du * f.dyy;
  return r;
}

inline Jet2 inv(const Jet2& f) {
  const double i = 1.0 / f.v;
  return compose(f, i, -i * i, 2.0 * i * i * i);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }
inline Jet2 operator+(double c, const Jet2& a) { return Jet2(c) + a; }
inline Jet2 operator+(const Jet2& a, double c) { return a + Jet2(c); }
inline Jet2 operator-(double c, const Jet2& a) { return Jet2(c) - a; }
inline Jet2 operator-(const Jet2& a, double c) { return a - Jet2(c); }
inline Jet2 operator*(double c, const Jet2& a) { return Jet2(c) * a; }
inline Jet2 operator*(const Jet2& a, double c) { return a * Jet2(c); }
inline Jet2 operator/(double c, const Jet2& a) { return Jet2(c) / a; }
inline Jet2 operator/(const Jet2& a, double c) { return a * Jet2(1.0 / c); }

inline Jet2 sin(const Jet2& f) {
  const double s = std::sin(f.v), c = std::cos(f.v);
  return compose(f, s, c, -s);
}
inline Jet2 cos(const Jet2& f) {
  const double s = std::sin(f.v), c = std::cos(f.v);
  return compose(f, c, -s, -c);
}
inline Jet2 exp(const Jet2& f) {
  const double e = std::exp(f.v);
  return compose(f, e, e, e);
}
inline Jet2 sqrt(const Jet2& f) {
  const double s = std::sqrt(f.v);
  return compose(f, s, 0.5 / s, -0.25 / (s * f.v));
}
inline Jet2 sqr(const Jet2& f) { return f * f; }

inline Jet2 pow_int(const Jet2& f, int n) {
  Jet2 r(1.0);
  for (int i = 0; i < n; ++i) r = r * f;
  return r;
}

/// Binary composition h = u(a, b) with all first and second partials supplied.
inline Jet2 compose2(const Jet2& a, const Jet2& b, double u, double ua, double ub, double uaa,
                     double uab, double ubb) {
  Jet2 r;
  r.v = u;
  r.dx = ua * a.dx + ub * b.dx;
  r.dy = ua * a.dy + ub * b.dy;
  r.dxx = uaa * a.dx * a.dx + 2.0 * uab * a.dx * b.dx + ubb * b.dx * b.dx + ua * a.dxx +
          ub * b.dxx;
  r.dxy = uaa * a.dx * a.dy + uab * (a.dx * b.dy + a.dy * b.dx) + ubb * b.dx * b.dy +
          ua * a.dxy + ub * b.dxy;
  r.dyy = uaa * a.dy * a.dy + 2.0 * uab * a.dy * b.dy + ubb * b.dy * b.dy + ua * a.dyy +
          ub * b.dyy;
  return r;
}

inline Jet2 atan2(const Jet2& y, const Jet2& x) {
  const double r2 = x.v * x.v + y.v * y.v;
  const double u = std::atan2(y.v, x.v);
  const double uy = x.v / r2;
  const double ux = -y.v / r2;
  const double r4 = r2 * r2;
  const double uyy = -2.0 * x.v * y.v / r4;
  const double uyx = (y.v * y.v - x.v * x.v) / r4;
  const double uxx = 2.0 * x.v * y.v / r4;
  return compose2(y, x, u, uy, ux, uyy, uyx, uxx);
}

}  // namespace iim
