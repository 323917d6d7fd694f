#include "iim/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <tuple>

namespace iim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Mat2 rotation(double angle) {
  Mat2 r;
  const double c = std::cos(angle), s = std::sin(angle);
  r << c, -s, s, c;
  return r;
}
}  // namespace

Vec2 InterfaceGeometry::to_world(const Vec2& body, double t) const {
  switch (motion_.kind) {
    case MotionLaw::Kind::Static:
      return center0_ + body;
    case MotionLaw::Kind::Translate:
      return center0_ + motion_.velocity * t + body;
    case MotionLaw::Kind::Rotate:
      return center0_ + rotation(motion_.omega * t) * body;
  }
  return center0_ + body;
}

Vec2 InterfaceGeometry::to_body(const Vec2& world, double t) const {
  switch (motion_.kind) {
    case MotionLaw::Kind::Static:
      return world - center0_;
    case MotionLaw::Kind::Translate:
      return world - center0_ - motion_.velocity * t;
    case MotionLaw::Kind::Rotate:
      return rotation(-motion_.omega * t) * (world - center0_);
  }
  return world - center0_;
}

Vec2 InterfaceGeometry::rotate_to_world(const Vec2& v, double t) const {
  if (motion_.kind == MotionLaw::Kind::Rotate) return rotation(motion_.omega * t) * v;
  return v;
}

Vec2 InterfaceGeometry::velocity(double theta, double t) const {
  switch (motion_.kind) {
    case MotionLaw::Kind::Static:
      return Vec2::Zero();
    case MotionLaw::Kind::Translate:
      return motion_.velocity;
    case MotionLaw::Kind::Rotate: {
      const Vec2 r = rotation(motion_.omega * t) * body_position(theta);
      return motion_.omega * Vec2(-r.y(), r.x());
    }
  }
  return Vec2::Zero();
}

Vec2 InterfaceGeometry::tangent(double theta, double t) const {
  return rotate_to_world(body_derivative(theta).normalized(), t);
}

double InterfaceGeometry::arclength_coordinate(double theta, double t) const {
  (void)t;  // rigid motions preserve arclength
  double s = std::fmod(theta, kTwoPi);
  if (s < 0) s += kTwoPi;
  // composite Simpson on [0, s]
  const int n = 256;
  const double dh = s / n;
  double acc = 0.0;
  for (int i = 0; i < n; i += 2) {
    acc += body_derivative(i * dh).norm() + 4.0 * body_derivative((i + 1) * dh).norm() +
           body_derivative((i + 2) * dh).norm();
  }
  return acc * dh / 3.0;
}

double InterfaceGeometry::total_arclength() const {
  const int n = 512;
  const double dh = kTwoPi / n;
  double acc = 0.0;
  for (int i = 0; i < n; i += 2) {
    acc += body_derivative(i * dh).norm() + 4.0 * body_derivative((i + 1) * dh).norm() +
           body_derivative((i + 2) * dh).norm();
  }
  return acc * dh / 3.0;
}

void InterfaceGeometry::validate(const GridSpec& spec, double t) const {
  const double l = spec.half_period;
  const double h = spec.spacing();
  Vec2 center = to_world(Vec2::Zero(), t);
  const double r = radius_bound();
  for (int c = 0; c < 2; ++c) {
    if (std::abs(center[c]) + r > l - 2.0 * h)
      throw GeometryDegenerate("curve too close to the box boundary / periodic images");
  }
}

// ---------------------------------------------------------------------------
// ellipse

double EllipseGeometry::body_nearest_parameter(const Vec2& p) const {
  double theta = std::atan2(a_ * p.y(), b_ * p.x());
  // Newton on g(theta) = (X - p) . X'
  for (int it = 0; it < 40; ++it) {
    const Vec2 x{a_ * std::cos(theta), b_ * std::sin(theta)};
    const Vec2 dx{-a_ * std::sin(theta), b_ * std::cos(theta)};
    const Vec2 ddx{-a_ * std::cos(theta), -b_ * std::sin(theta)};
    const double g = (x - p).dot(dx);
    const double dg = dx.squaredNorm() + (x - p).dot(ddx);
    if (std::abs(dg) < 1e-300) break;
    const double step = g / dg;
    theta -= step;
    if (std::abs(step) < 1e-14) break;
  }
  return theta;
}

double EllipseGeometry::body_signed_distance(const Vec2& p) const {
  const double implicit =
      p.x() * p.x() / (a_ * a_) + p.y() * p.y() / (b_ * b_) - 1.0;
  const double theta = body_nearest_parameter(p);
  const Vec2 x{a_ * std::cos(theta), b_ * std::sin(theta)};
  const double d = (p - x).norm();
  return implicit <= 0.0 ? -d : d;
}

// ---------------------------------------------------------------------------
// spline

SplineGeometry::SplineGeometry(std::vector<Vec2> points, MotionLaw motion)
    : InterfaceGeometry(Vec2::Zero(), motion), spline_(std::move(points)) {
  const int dense_n = 2048;
  dense_.resize(dense_n);
  for (int i = 0; i < dense_n; ++i) {
    dense_[i] = spline_.position(kTwoPi * i / dense_n);
    radius_bound_ = std::max(radius_bound_, dense_[i].norm());
  }
  // reject self-intersecting curves: distant parameter values must not come
  // close in space (coarse subsample)
  const int coarse = 256;
  const int stride = dense_n / coarse;
  for (int i = 0; i < coarse; ++i) {
    for (int j = i + 8; j < coarse; ++j) {
      const int wrap_gap = std::min(j - i, coarse - (j - i));
      if (wrap_gap < 8) continue;
      const double d = (dense_[i * stride] - dense_[j * stride]).norm();
      const double arc = kTwoPi * wrap_gap / coarse * radius_bound_;
      if (d < 0.02 * arc)
        throw GeometryDegenerate("spline self-intersects or nearly touches itself");
    }
  }
}

double SplineGeometry::body_nearest_parameter(const Vec2& p) const {
  const int dense_n = static_cast<int>(dense_.size());
  int best = 0;
  double best_d = 1e300;
  for (int i = 0; i < dense_n; ++i) {
    const double d = (dense_[i] - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  double theta = kTwoPi * best / dense_n;
  for (int it = 0; it < 40; ++it) {
    const Vec2 x = spline_.position(theta);
    const Vec2 dx = spline_.derivative(theta);
    const Vec2 ddx = spline_.second_derivative(theta);
    const double g = (x - p).dot(dx);
    const double dg = dx.squaredNorm() + (x - p).dot(ddx);
    if (std::abs(dg) < 1e-300) break;
    const double step = g / dg;
    theta -= step;
    if (std::abs(step) < 1e-14) break;
  }
  return theta;
}

double SplineGeometry::body_signed_distance(const Vec2& p) const {
  // sign from ray-casting parity on the dense polyline
  const int n = static_cast<int>(dense_.size());
  bool inside = false;
  for (int i = 0; i < n; ++i) {
    const Vec2& a = dense_[i];
    const Vec2& b = dense_[(i + 1) % n];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x_cross = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (x_cross > p.x()) inside = !inside;
    }
  }
  const double theta = body_nearest_parameter(p);
  const double d = (p - spline_.position(theta)).norm();
  return inside || d == 0.0 ? -d : d;
}

// ---------------------------------------------------------------------------
// grid classification and intersections

SideField classify(const GridSpec& spec, const InterfaceGeometry& geometry, double t) {
  geometry.validate(spec, t);
  const int m = spec.points();
  SideField field{spec, Eigen::Array<int8_t, Eigen::Dynamic, Eigen::Dynamic>(m, m),
                  Eigen::ArrayXXd(m, m)};
  for (int iy = 0; iy < m; ++iy) {
    for (int ix = 0; ix < m; ++ix) {
      const double d = geometry.signed_distance({spec.coord(ix), spec.coord(iy)}, t);
      field.signed_distance(ix, iy) = d;
      field.side(ix, iy) = d > 0.0 ? int8_t{1} : int8_t{-1};
    }
  }
  return field;
}

namespace {

IntersectionRecord make_record(const GridSpec& spec, const InterfaceGeometry& geometry, double t,
                               int axis, int ix, int iy, double root_coord, int8_t side_base) {
  IntersectionRecord rec;
  rec.axis = axis;
  rec.base_ix = ix;
  rec.base_iy = iy;
  const double x0 = spec.coord(ix), y0 = spec.coord(iy);
  rec.x_star = axis == 0 ? Vec2{root_coord, y0} : Vec2{x0, root_coord};
  const double upper = (axis == 0 ? x0 : y0) + spec.spacing();
  rec.h_plus = upper - root_coord;
  rec.theta = geometry.nearest_parameter(rec.x_star, t);
  rec.normal = geometry.normal(rec.theta, t);
  rec.tangent = geometry.tangent(rec.theta, t);
  rec.arclength = geometry.arclength_coordinate(rec.theta, t);
  rec.side_base = side_base;
  return rec;
}

}  // namespace

std::vector<IntersectionRecord> find_intersections(const GridSpec& spec,
                                                   const InterfaceGeometry& geometry, double t,
                                                   const SideField& sides) {
  std::vector<IntersectionRecord> records;
  const int m = spec.points();
  const double h = spec.spacing();
  for (int axis = 0; axis < 2; ++axis) {
    for (int iy = 0; iy < m; ++iy) {
      for (int ix = 0; ix < m; ++ix) {
        const int jx = axis == 0 ? spec.wrap(ix + 1) : ix;
        const int jy = axis == 0 ? iy : spec.wrap(iy + 1);
        if (sides.side(ix, iy) == sides.side(jx, jy)) continue;
        // bisection on the signed distance restricted to the segment
        const double base = axis == 0 ? spec.coord(ix) : spec.coord(iy);
        double lo = base, hi = base + h;
        auto dist = [&](double c) {
          const Vec2 p = axis == 0 ? Vec2{c, spec.coord(iy)} : Vec2{spec.coord(ix), c};
          return geometry.signed_distance(p, t);
        };
        double flo = dist(lo), fhi = dist(hi);
        if (flo == 0.0) {
          records.push_back(make_record(spec, geometry, t, axis, ix, iy, lo, sides.side(ix, iy)));
          continue;
        }
        if (flo * fhi > 0.0)
          throw RootNotBracketed("sign change without bracketing root on gridline segment");
        while (hi - lo > 1e-12) {
          const double mid = 0.5 * (lo + hi);
          const double fm = dist(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if (flo * fm < 0.0) {
            hi = mid;
          } else {
            lo = mid;
            flo = fm;
          }
        }
        records.push_back(
            make_record(spec, geometry, t, axis, ix, iy, 0.5 * (lo + hi), sides.side(ix, iy)));
      }
    }
  }
  // under-resolution diagnostic: a node with more than two crossed arms per
  // axis means the geometry is thin relative to the grid
  std::map<std::tuple<int, int, int>, int> arm_count;
  for (const auto& rec : records) {
    const int ux = rec.axis == 0 ? spec.wrap(rec.base_ix + 1) : rec.base_ix;
    const int uy = rec.axis == 0 ? rec.base_iy : spec.wrap(rec.base_iy + 1);
    ++arm_count[{rec.base_ix, rec.base_iy, rec.axis}];
    ++arm_count[{ux, uy, rec.axis}];
  }
  for (const auto& [key, count] : arm_count) {
    if (count > 2) {
      std::fprintf(stderr,
                   "iim: warning: node (%d, %d) has %d crossed arms on axis %d; "
                   "the interface is under-resolved\n",
                   std::get<0>(key), std::get<1>(key), count, std::get<2>(key));
      break;
    }
  }
  return records;
}

std::vector<IntersectionRecord> find_intersections(const GridSpec& spec,
                                                   const InterfaceGeometry& geometry, double t) {
  return find_intersections(spec, geometry, t, classify(spec, geometry, t));
}

std::vector<CrossingEvent> crossing_events(const GridSpec& spec,
                                           const InterfaceGeometry& geometry, double t_n,
                                           double t_next) {
  if (!(t_next > t_n)) throw Error("crossing_events: need t_next > t_n");
  std::vector<CrossingEvent> events;
  const double dt = t_next - t_n;
  // side samples at time resolution 4; >1 change at any node means the step
  // is too large for the prescribed motion
  std::array<SideField, 5> samples = {
      classify(spec, geometry, t_n), classify(spec, geometry, t_n + dt / 4.0),
      classify(spec, geometry, t_n + dt / 2.0), classify(spec, geometry, t_n + 3.0 * dt / 4.0),
      classify(spec, geometry, t_next)};
  const SideField& before = samples.front();
  const SideField& after = samples.back();
  const int m = spec.points();
  for (int iy = 0; iy < m; ++iy) {
    for (int ix = 0; ix < m; ++ix) {
      int changes = 0;
      for (int k = 1; k < 5; ++k)
        if (samples[k].side(ix, iy) != samples[k - 1].side(ix, iy)) ++changes;
      if (changes > 1)
        throw MultipleCrossings("node crossed more than once within one step");
      if (before.side(ix, iy) == after.side(ix, iy)) continue;
      const Vec2 p{spec.coord(ix), spec.coord(iy)};
      // linear interpolation of the signed distance in time, one bisection refinement
      const double d0 = before.signed_distance(ix, iy);
      const double d1 = after.signed_distance(ix, iy);
      double frac = d0 / (d0 - d1);
      const double dm = geometry.signed_distance(p, t_n + dt * frac);
      const bool same_sign_as_start = (dm > 0.0) == (d0 > 0.0);
      if (dm != 0.0) {
        if (same_sign_as_start)
          frac = frac + (1.0 - frac) * dm / (dm - d1);
        else
          frac = frac * d0 / (d0 - dm);
      }
      CrossingEvent ev;
      ev.ix = ix;
      ev.iy = iy;
      ev.fraction = std::clamp(frac, 0.0, 1.0);
      ev.side_before = before.side(ix, iy);
      ev.side_after = after.side(ix, iy);
      ev.theta = geometry.nearest_parameter(p, t_n + dt * ev.fraction);
      events.push_back(ev);
    }
  }
  return events;
}

}  // namespace iim
