#include <cmath>
#include <numbers>

#include "doctest.h"
#include "iim/cases.hpp"
#include "iim/jumps.hpp"

using namespace iim;

namespace {
constexpr double kPi = std::numbers::pi;

// Jump of div(g) across the interface from the case jets; enters the derived
// pressure Hessian through the Poisson balance.
DivBodyForceJump case_div_g_jump(std::shared_ptr<const ManufacturedCase> c) {
  return [c](double theta, double t) {
    const Vec2 x = c->geometry()->position(theta, t);
    auto div_g = [&](Side side) {
      const SideJets j = c->jets(x, t, side);
      const Mat2 g = j.u_grad();
      return (g * g).trace() + j.p_hessian().trace();
    };
    return div_g(Side::outside) - div_g(Side::inside);
  };
}

double max_jump_mismatch(const JumpSet& a, const JumpSet& b, bool second_order) {
  double m = 0.0;
  if (!second_order) {
    m = std::max(m, (a.jump_Du - b.jump_Du).norm());
    m = std::max(m, std::abs(a.jump_p - b.jump_p));
    m = std::max(m, (a.jump_Dp - b.jump_Dp).norm());
    m = std::max(m, (a.jump_ut - b.jump_ut).norm());
    m = std::max(m, (a.jump_advection - b.jump_advection).norm());
  } else {
    m = std::max(m, (a.jump_D2u[0] - b.jump_D2u[0]).norm());
    m = std::max(m, (a.jump_D2u[1] - b.jump_D2u[1]).norm());
    m = std::max(m, (a.jump_D2p - b.jump_D2p).norm());
    m = std::max(m, (a.jump_Dadv - b.jump_Dadv).norm());
  }
  return m;
}
}  // namespace

TEST_CASE("surface divergence of the tangential force") {
  auto circle = std::make_shared<CircleGeometry>(Vec2{0.0, 0.0}, 0.5);

  SUBCASE("purely normal force has zero surface divergence") {
    NamedProfileForce f(circle, {.normal_amp = 2.0});
    for (double th : {0.0, 1.1, 3.9}) CHECK(surface_divergence_ftan(*circle, f, th, 0.0) == 0.0);
  }

  SUBCASE("constant tangential magnitude has zero arclength derivative") {
    NamedProfileForce f(circle, {.tangential_const_amp = 1.5});
    for (double th : {0.4, 2.2}) {
      CHECK(std::abs(surface_divergence_ftan(*circle, f, th, 0.0)) < 1e-10);
    }
  }

  SUBCASE("sin(theta) profile differentiates to cos(theta)/r") {
    NamedProfileForce f(circle, {.tangential_amp = 1.0, .tangential_mode = 1});
    for (double th : {0.3, 1.7, 5.0}) {
      CHECK(surface_divergence_ftan(*circle, f, th, 0.0) ==
            doctest::Approx(std::cos(th) / 0.5).epsilon(1e-10));
    }
  }

  SUBCASE("spectral fallback matches the analytic derivative") {
    NamedProfileForce f(circle, {.tangential_amp = 0.7, .tangential_mode = 3});
    auto opaque = OpaqueForce(circle, [&](double th, double t) { return f.at(th, t); });
    // base-class spectral path
    const double spectral = static_cast<const ForceDensity&>(f).ForceDensity::tangential_derivative(1.3, 0.0);
    CHECK(spectral == doctest::Approx(f.tangential_derivative(1.3, 0.0)).epsilon(1e-10));
    CHECK_THROWS_AS(opaque.tangential_derivative(1.3, 0.0), MissingTangentialDerivative);
  }
}

TEST_CASE("derived jumps for a pure normal constant force") {
  auto circle = std::make_shared<CircleGeometry>(Vec2{0.0, 0.0}, 0.5);
  auto force = std::make_shared<NamedProfileForce>(circle, ForceProfileParams{.normal_amp = 0.8});
  VelocityProbe probe;  // quiescent flow
  const JumpSet j = jumps_from_force(*circle, *force, probe, 1.234, 0.0);
  CHECK(j.jump_p == doctest::Approx(0.8));
  CHECK(j.jump_Du.norm() < 1e-12);
  CHECK(j.jump_Dp.norm() < 1e-10);
  CHECK(j.jump_D2u[0].norm() < 1e-10);
  CHECK(j.jump_D2u[1].norm() < 1e-10);
  CHECK(j.jump_D2p.norm() < 1e-10);
  CHECK(j.jump_ut.norm() == 0.0);
  CHECK(j.jump_advection.norm() == 0.0);
}

TEST_CASE("derived jumps reproduce the analytic ones on M2") {
  auto c = case_static_circle();
  CaseJumpProvider analytic(c);
  const double t = 0.1;

  // first-order jumps and the exactly-reconstructible second-order pieces
  SUBCASE("first-order jumps match tightly with exact grid state") {
    GridSpec spec(64);
    auto u = sample_velocity(*c, spec, t);
    DerivedJumpProvider derived(c->geometry(), c->force(), VelocityProbe{&u},
                                case_div_g_jump(c));
    for (double th : {0.2, 1.0, 2.5, 4.4, 6.0}) {
      const JumpSet a = analytic.at(th, t);
      const JumpSet d = derived.at(th, t);
      CHECK(max_jump_mismatch(a, d, false) < 1e-7);
      CHECK((a.jump_D2u[0] - d.jump_D2u[0]).norm() < 1e-6);
      CHECK((a.jump_D2u[1] - d.jump_D2u[1]).norm() < 1e-6);
    }
  }

  SUBCASE("state-dependent second-order pieces converge with the grid") {
    std::vector<double> errs;
    for (int n : {32, 64, 128}) {
      GridSpec spec(n);
      auto u = sample_velocity(*c, spec, t);
      DerivedJumpProvider derived(c->geometry(), c->force(), VelocityProbe{&u},
                                  case_div_g_jump(c));
      double worst = 0.0;
      for (double th : {0.2, 1.0, 2.5, 4.4, 6.0})
        worst = std::max(worst, max_jump_mismatch(analytic.at(th, t), derived.at(th, t), true));
      errs.push_back(worst);
    }
    // fitted order of the mismatch in h
    const double rate = std::log2(errs[0] / errs[2]) / 2.0;
    CHECK(rate >= 0.8);
    CHECK(errs[2] < errs[0]);
  }
}

TEST_CASE("derived jumps track the moving interface (M3)") {
  auto c = case_moving_circle();
  CaseJumpProvider analytic(c);
  GridSpec spec(64);
  const double t = 0.12;
  auto u = sample_velocity(*c, spec, t);
  DerivedJumpProvider derived(c->geometry(), c->force(), VelocityProbe{&u}, case_div_g_jump(c));
  double max_ut = 0.0;
  for (double th : {0.5, 2.0, 3.8}) {
    const JumpSet a = analytic.at(th, t);
    const JumpSet d = derived.at(th, t);
    CHECK(max_jump_mismatch(a, d, false) < 1e-7);
    max_ut = std::max(max_ut, a.jump_ut.norm());
  }
  // the time-derivative jump is motion-driven and must be nonzero
  CHECK(max_ut > 0.05);
}
