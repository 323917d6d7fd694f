#pragma once

#include <array>
#include <memory>

#include "iim/force.hpp"
#include "iim/geometry.hpp"
#include "iim/grid.hpp"

namespace iim {

/// Jumps (outside minus inside) of the flow quantities and their Cartesian
/// derivatives at one interface point.
struct JumpSet {
  Vec2 jump_u = Vec2::Zero();  // identically zero for viscous flow
  Mat2 jump_Du = Mat2::Zero();  // [d u_i / d x_j], row i, column j
  std::array<Mat2, 2> jump_D2u = {Mat2::Zero(), Mat2::Zero()};  // Hessian per component
  double jump_p = 0.0;
  Vec2 jump_Dp = Vec2::Zero();
  Mat2 jump_D2p = Mat2::Zero();
  Vec2 jump_ut = Vec2::Zero();
  Vec2 jump_advection = Vec2::Zero();  // [u . grad u]
  Mat2 jump_Dadv = Mat2::Zero();       // [d (u . grad u)_i / d x_k]

  Vec2 jump_lap_u() const { return {jump_D2u[0].trace(), jump_D2u[1].trace()}; }

  JumpSet& operator*=(double c) {
    jump_u *= c;
    jump_Du *= c;
    jump_D2u[0] *= c;
    jump_D2u[1] *= c;
    jump_p *= c;
    jump_Dp *= c;
    jump_D2p *= c;
    jump_ut *= c;
    jump_advection *= c;
    jump_Dadv *= c;
    return *this;
  }
};

/// Source of jump data along the interface.
class JumpProvider {
 public:
  virtual ~JumpProvider() = default;
  virtual JumpSet at(double theta, double t) const = 0;
};

class JumpProviderScaled final : public JumpProvider {
 public:
  JumpProviderScaled(std::shared_ptr<const JumpProvider> inner, double factor)
      : inner_(std::move(inner)), factor_(factor) {}
  JumpSet at(double theta, double t) const override {
    JumpSet j = inner_->at(theta, t);
    j *= factor_;
    return j;
  }

 private:
  std::shared_ptr<const JumpProvider> inner_;
  double factor_;
};

/// Grid velocity access for reconstructing state-dependent jump pieces.
/// A null field is treated as quiescent flow.
struct VelocityProbe {
  const VectorGridFunctionD* u = nullptr;

  Vec2 value_at(const Vec2& p) const;
  Mat2 gradient_near(const Vec2& p, const Vec2& offset) const;
};

/// Builds the full JumpSet from the force density and the interface motion:
/// first-derivative jumps follow from the force directly, second-derivative
/// jumps from tangential differentiation of those relations plus the momentum
/// balance across the interface. The grid velocity supplies the mean one-sided
/// gradients entering the quadratic terms.
/// Optional jump of div(g) across the interface when a body force g is part
/// of the problem; it enters the pressure Hessian through the Poisson balance.
using DivBodyForceJump = std::function<double(double, double)>;

JumpSet jumps_from_force(const InterfaceGeometry& geometry, const ForceDensity& force,
                         const VelocityProbe& state_velocity, double theta, double t,
                         const DivBodyForceJump& div_g_jump = {});

class DerivedJumpProvider final : public JumpProvider {
 public:
  DerivedJumpProvider(std::shared_ptr<const InterfaceGeometry> geometry,
                      std::shared_ptr<const ForceDensity> force, VelocityProbe probe,
                      DivBodyForceJump div_g_jump = {})
      : geometry_(std::move(geometry)),
        force_(std::move(force)),
        probe_(probe),
        div_g_jump_(std::move(div_g_jump)) {}

  void set_probe(VelocityProbe probe) { probe_ = probe; }

  JumpSet at(double theta, double t) const override {
    return jumps_from_force(*geometry_, *force_, probe_, theta, t, div_g_jump_);
  }

 private:
  std::shared_ptr<const InterfaceGeometry> geometry_;
  std::shared_ptr<const ForceDensity> force_;
  VelocityProbe probe_;
  DivBodyForceJump div_g_jump_;
};

}  // namespace iim
