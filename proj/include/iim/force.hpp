#pragma once

#include <functional>
#include <memory>

#include "iim/geometry.hpp"

namespace iim {

/// Force density along the interface, per unit arclength, periodic in theta.
class ForceDensity {
 public:
  explicit ForceDensity(std::shared_ptr<const InterfaceGeometry> geometry)
      : geometry_(std::move(geometry)) {}
  virtual ~ForceDensity() = default;

  /// Force vector in the world frame.
  virtual Vec2 at(double theta, double t) const = 0;

  /// Signed tangential component f . tangent.
  double tangential_component(double theta, double t) const {
    return at(theta, t).dot(geometry_->tangent(theta, t));
  }

  double normal_component(double theta, double t) const {
    return at(theta, t).dot(geometry_->normal(theta, t));
  }

  /// d/dtheta of the tangential component. Defaults to spectral
  /// differentiation of theta samples.
  virtual double tangential_derivative(double theta, double t) const;
  virtual bool has_analytic_tangential_derivative() const { return false; }

  /// d/dtheta of the normal component; spectral by default.
  virtual double normal_derivative(double theta, double t) const;

  const InterfaceGeometry& geometry() const { return *geometry_; }

 protected:
  std::shared_ptr<const InterfaceGeometry> geometry_;
};

/// f = (normal_amp + normal_cos_amp cos(normal_mode theta)) n
///   + (tangential_const_amp + tangential_amp sin(tangential_mode theta)) t
struct ForceProfileParams {
  double normal_amp = 0.0;
  double normal_cos_amp = 0.0;
  int normal_mode = 1;
  double tangential_amp = 0.0;
  int tangential_mode = 1;
  double tangential_const_amp = 0.0;
};

class NamedProfileForce final : public ForceDensity {
 public:
  NamedProfileForce(std::shared_ptr<const InterfaceGeometry> geometry, ForceProfileParams params)
      : ForceDensity(std::move(geometry)), params_(params) {}

  Vec2 at(double theta, double t) const override;
  double tangential_derivative(double theta, double t) const override;
  bool has_analytic_tangential_derivative() const override { return true; }
  double normal_derivative(double theta, double t) const override;

 private:
  ForceProfileParams params_;
};

/// Wrapper that hides everything but pointwise values; used to exercise the
/// missing-tangential-derivative error path.
class OpaqueForce final : public ForceDensity {
 public:
  OpaqueForce(std::shared_ptr<const InterfaceGeometry> geometry,
              std::function<Vec2(double, double)> fn)
      : ForceDensity(std::move(geometry)), fn_(std::move(fn)) {}
  Vec2 at(double theta, double t) const override { return fn_(theta, t); }
  double tangential_derivative(double, double) const override {
    throw MissingTangentialDerivative("force provides pointwise values only");
  }

 private:
  std::function<Vec2(double, double)> fn_;
};

/// Surface divergence of the tangential force in 2D: the arclength derivative
/// of the signed tangential component.
double surface_divergence_ftan(const InterfaceGeometry& geometry, const ForceDensity& force,
                               double theta, double t);

}  // namespace iim
