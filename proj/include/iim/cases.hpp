#pragma once

#include <functional>
#include <memory>
#include <string>

#include "iim/jet.hpp"
#include "iim/jumps.hpp"

namespace iim {

enum class Side : int { inside = -1, outside = 1 };

/// Velocity component jets bundled with the pressure jet for one side.
struct SideJets {
  std::array<Jet2, 2> u;
  Jet2 p;

  Vec2 u_value() const { return {u[0].v, u[1].v}; }
  Mat2 u_grad() const {
    Mat2 g;
    g << u[0].dx, u[0].dy, u[1].dx, u[1].dy;
    return g;
  }
  Mat2 u_hessian(int comp) const {
    Mat2 h;
    h << u[comp].dxx, u[comp].dxy, u[comp].dxy, u[comp].dyy;
    return h;
  }
  Vec2 p_grad() const { return {p.dx, p.dy}; }
  Mat2 p_hessian() const {
    Mat2 h;
    h << p.dxx, p.dxy, p.dxy, p.dyy;
    return h;
  }
};

/// Piecewise-analytic exact solution with a consistent interface force and a
/// continuous body force; the error oracle for convergence studies.
class ManufacturedCase {
 public:
  using JetFn = std::function<SideJets(const Vec2&, double, Side)>;
  using VtFn = std::function<Vec2(const Vec2&, double, Side)>;

  ManufacturedCase(std::string name, std::shared_ptr<InterfaceGeometry> geometry, JetFn jets,
                   VtFn velocity_t)
      : name_(std::move(name)),
        geometry_(std::move(geometry)),
        jets_(std::move(jets)),
        velocity_t_(std::move(velocity_t)) {}

  const std::string& name() const { return name_; }
  bool has_interface() const { return geometry_ != nullptr; }
  std::shared_ptr<InterfaceGeometry> geometry() const { return geometry_; }
  std::shared_ptr<const ForceDensity> force() const { return force_; }
  void set_force(std::shared_ptr<const ForceDensity> f) { force_ = std::move(f); }

  Side side_of(const Vec2& x, double t) const {
    if (!geometry_) return Side::outside;
    return geometry_->signed_distance(x, t) > 0.0 ? Side::outside : Side::inside;
  }

  SideJets jets(const Vec2& x, double t, Side side) const { return jets_(x, t, side); }
  SideJets jets_at(const Vec2& x, double t) const { return jets_(x, t, side_of(x, t)); }

  Vec2 velocity(const Vec2& x, double t) const { return jets_at(x, t).u_value(); }
  double pressure(const Vec2& x, double t) const { return jets_at(x, t).p.v; }
  Vec2 velocity_t(const Vec2& x, double t, Side side) const { return velocity_t_(x, t, side); }

  /// Momentum residual u_t + u.grad(u) + grad(p) - lap(u) on the given side;
  /// continuous across the interface by construction.
  Vec2 momentum_residual(const Vec2& x, double t, Side side) const;
  Vec2 body_force(const Vec2& x, double t) const {
    return momentum_residual(x, t, side_of(x, t));
  }

  /// Divergence of the body force on the given side (exact, from the jets);
  /// it enters the pressure Poisson equation.
  double div_body_force(const Vec2& x, double t, Side side) const;
  double div_body_force(const Vec2& x, double t) const {
    return div_body_force(x, t, side_of(x, t));
  }

 private:
  std::string name_;
  std::shared_ptr<InterfaceGeometry> geometry_;
  JetFn jets_;
  VtFn velocity_t_;
  std::shared_ptr<const ForceDensity> force_;
};

/// Exact jumps evaluated from the case's one-sided jets.
class CaseJumpProvider final : public JumpProvider {
 public:
  explicit CaseJumpProvider(std::shared_ptr<const ManufacturedCase> c) : case_(std::move(c)) {}
  JumpSet at(double theta, double t) const override;

 private:
  std::shared_ptr<const ManufacturedCase> case_;
};

struct CircleCaseParams {
  double radius = 1.0;
  Vec2 center = {0.083, 0.047};
  double swirl_lin = 0.5;    // azimuthal profile a r + b r^3: a
  double swirl_cub = -0.1;   // and b
  double shear_jump = 1.0;   // amplitude of [du/dn]
  int mode = 3;              // angular mode of the jump profiles
  double pressure_jump_const = 0.4;
  double base_pressure_amp = 0.3;
  double decay = 1.0;            // fields carry exp(-decay t)
  Vec2 translation = {0.0, 0.0};  // interface and fields translate rigidly
  double outside_velocity_scale = 1.0;  // != 1 breaks [u] = 0 (validation probe)
};

/// Smooth interface-free baseline on the periodic box.
std::shared_ptr<ManufacturedCase> case_taylor_green();

/// Static circle with jumps in du/dn, p and dp/dn ("M2").
std::shared_ptr<ManufacturedCase> case_static_circle();

/// Translating circle; jumps ride with the motion and grid points are crossed
/// every step ("M3").
std::shared_ptr<ManufacturedCase> case_moving_circle();

std::shared_ptr<ManufacturedCase> make_circle_case(std::string name,
                                                   const CircleCaseParams& params);

std::shared_ptr<ManufacturedCase> case_by_name(const std::string& name);
std::vector<std::string> known_case_names();

/// Construction-time self checks; throws ConstructionInvalid.
void validate_case(const ManufacturedCase& c);

// grid sampling of the exact fields (side-correct near the interface)
VectorGridFunctionD sample_velocity(const ManufacturedCase& c, const GridSpec& spec, double t);
GridFunctionD sample_pressure(const ManufacturedCase& c, const GridSpec& spec, double t);
VectorGridFunctionD sample_body_force(const ManufacturedCase& c, const GridSpec& spec, double t);
GridFunctionD sample_div_body_force(const ManufacturedCase& c, const GridSpec& spec, double t);

}  // namespace iim
