#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "iim/grid.hpp"
#include "iim/spline.hpp"

namespace iim {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Rigid prescribed motion of the interface.
struct MotionLaw {
  enum class Kind { Static, Translate, Rotate };
  Kind kind = Kind::Static;
  Vec2 velocity = Vec2::Zero();  // Translate
  double omega = 0.0;            // Rotate, about the shape center

  static MotionLaw statics() { return {}; }
  static MotionLaw translate(const Vec2& u) { return {Kind::Translate, u, 0.0}; }
  static MotionLaw rotate(double omega) { return {Kind::Rotate, Vec2::Zero(), omega}; }
};

/// Closed curve with prescribed rigid motion. Shape queries run in the body
/// frame; points and directions are mapped through the motion.
class InterfaceGeometry {
 public:
  virtual ~InterfaceGeometry() = default;

  InterfaceGeometry(Vec2 center, MotionLaw motion) : center0_(center), motion_(motion) {}

  Vec2 position(double theta, double t) const { return to_world(body_position(theta), t); }

  /// Velocity of the material curve point (prescribed motion).
  Vec2 velocity(double theta, double t) const;

  /// Unit tangent (counterclockwise) and outward unit normal at theta.
  Vec2 tangent(double theta, double t) const;
  Vec2 normal(double theta, double t) const {
    const Vec2 tg = tangent(theta, t);
    return {tg.y(), -tg.x()};
  }

  /// |dX/dtheta|, the parameter-to-arclength metric (motion-invariant).
  double metric(double theta, double /*t*/) const { return body_derivative(theta).norm(); }

  double arclength_coordinate(double theta, double t) const;
  double total_arclength() const;

  /// Signed distance, outward positive; exact sign everywhere, accurate near
  /// the curve. Points on the curve count as inside.
  double signed_distance(const Vec2& p, double t) const {
    return body_signed_distance(to_body(p, t));
  }

  double nearest_parameter(const Vec2& p, double t) const {
    return body_nearest_parameter(to_body(p, t));
  }

  /// Throws GeometryDegenerate if the curve leaves the box or approaches its
  /// periodic images closer than 2h at time t.
  void validate(const GridSpec& spec, double t) const;

  const MotionLaw& motion() const { return motion_; }

  /// Rigid-motion frame maps (world <-> body at time t).
  Vec2 to_world(const Vec2& body, double t) const;
  Vec2 to_body(const Vec2& world, double t) const;

 protected:
  virtual Vec2 body_position(double theta) const = 0;
  virtual Vec2 body_derivative(double theta) const = 0;
  virtual double body_signed_distance(const Vec2& p) const = 0;
  virtual double body_nearest_parameter(const Vec2& p) const = 0;
  /// Max distance of the curve from the body origin (for validation).
  virtual double radius_bound() const = 0;

  Vec2 rotate_to_world(const Vec2& v, double t) const;

  Vec2 center0_;
  MotionLaw motion_;
};

class CircleGeometry final : public InterfaceGeometry {
 public:
  CircleGeometry(Vec2 center, double radius, MotionLaw motion = MotionLaw::statics())
      : InterfaceGeometry(center, motion), radius_(radius) {
    if (!(radius > 0)) throw GeometryDegenerate("circle radius must be positive");
  }
  double radius() const { return radius_; }

 protected:
  Vec2 body_position(double theta) const override {
    return {radius_ * std::cos(theta), radius_ * std::sin(theta)};
  }
  Vec2 body_derivative(double theta) const override {
    return {-radius_ * std::sin(theta), radius_ * std::cos(theta)};
  }
  double body_signed_distance(const Vec2& p) const override { return p.norm() - radius_; }
  double body_nearest_parameter(const Vec2& p) const override {
    return std::atan2(p.y(), p.x());
  }
  double radius_bound() const override { return radius_; }

 private:
  double radius_;
};

class EllipseGeometry final : public InterfaceGeometry {
 public:
  EllipseGeometry(Vec2 center, double a, double b, MotionLaw motion = MotionLaw::statics())
      : InterfaceGeometry(center, motion), a_(a), b_(b) {
    if (!(a > 0) || !(b > 0)) throw GeometryDegenerate("ellipse semi-axes must be positive");
  }

 protected:
  Vec2 body_position(double theta) const override {
    return {a_ * std::cos(theta), b_ * std::sin(theta)};
  }
  Vec2 body_derivative(double theta) const override {
    return {-a_ * std::sin(theta), b_ * std::cos(theta)};
  }
  double body_signed_distance(const Vec2& p) const override;
  double body_nearest_parameter(const Vec2& p) const override;
  double radius_bound() const override { return std::max(a_, b_); }

 private:
  double a_, b_;
};

class SplineGeometry final : public InterfaceGeometry {
 public:
  SplineGeometry(std::vector<Vec2> points, MotionLaw motion = MotionLaw::statics());

 protected:
  Vec2 body_position(double theta) const override { return spline_.position(theta); }
  Vec2 body_derivative(double theta) const override { return spline_.derivative(theta); }
  double body_signed_distance(const Vec2& p) const override;
  double body_nearest_parameter(const Vec2& p) const override;
  double radius_bound() const override { return radius_bound_; }

 private:
  PeriodicSpline spline_;
  std::vector<Vec2> dense_;  // dense body-frame polyline for sign and seeding
  double radius_bound_ = 0.0;
};

/// Per-node inside/outside labels plus signed distance. side is +1 outside,
/// -1 inside; points on the curve are inside.
struct SideField {
  GridSpec spec;
  Eigen::Array<int8_t, Eigen::Dynamic, Eigen::Dynamic> side;
  Eigen::ArrayXXd signed_distance;

  bool inside(int ix, int iy) const { return side(ix, iy) < 0; }
};

SideField classify(const GridSpec& spec, const InterfaceGeometry& geometry, double t);

/// One interface crossing of a gridline segment [x_base, x_base + h e_axis].
struct IntersectionRecord {
  int axis = 0;
  int base_ix = 0, base_iy = 0;  // storage indices of the lower node
  Vec2 x_star = Vec2::Zero();
  double h_plus = 0.0;  // distance from x_star to the upper node
  Vec2 normal = Vec2::Zero(), tangent = Vec2::Zero();
  double theta = 0.0;
  double arclength = 0.0;
  int8_t side_base = 0;  // side of the lower node
};

std::vector<IntersectionRecord> find_intersections(const GridSpec& spec,
                                                   const InterfaceGeometry& geometry, double t,
                                                   const SideField& sides);
std::vector<IntersectionRecord> find_intersections(const GridSpec& spec,
                                                   const InterfaceGeometry& geometry, double t);

/// Node crossed by the interface during (t_n, t_next].
struct CrossingEvent {
  int ix = 0, iy = 0;
  double fraction = 0.0;  // crossing time as a fraction of the interval
  int8_t side_before = 0, side_after = 0;
  double theta = 0.0;  // curve parameter passing through the node at crossing
};

std::vector<CrossingEvent> crossing_events(const GridSpec& spec,
                                           const InterfaceGeometry& geometry, double t_n,
                                           double t_next);

}  // namespace iim
