#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "iim/cases.hpp"

using namespace iim;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent derivative oracle: 4th-order central differences on the raw
// value evaluators, usable away from the interface.
Vec2 fd_momentum_residual(const ManufacturedCase& c, const Vec2& x, double t, Side side) {
  const double h = 1e-3;
  auto u = [&](double a, double b, double tt) -> Vec2 {
    return c.jets({a, b}, tt, side).u_value();
  };
  auto p = [&](double a, double b) { return c.jets({a, b}, t, side).p.v; };
  auto d4x = [&](auto f) -> Vec2 {
    const Vec2 fp = f(x.x() + h, x.y()), fm = f(x.x() - h, x.y());
    const Vec2 fp2 = f(x.x() + 2 * h, x.y()), fm2 = f(x.x() - 2 * h, x.y());
    return (8.0 * (fp - fm) - (fp2 - fm2)) / (12 * h);
  };
  auto d4y = [&](auto f) -> Vec2 {
    const Vec2 fp = f(x.x(), x.y() + h), fm = f(x.x(), x.y() - h);
    const Vec2 fp2 = f(x.x(), x.y() + 2 * h), fm2 = f(x.x(), x.y() - 2 * h);
    return (8.0 * (fp - fm) - (fp2 - fm2)) / (12 * h);
  };
  auto d4x_s = [&](auto f) {
    return (8.0 * (f(x.x() + h, x.y()) - f(x.x() - h, x.y())) -
            (f(x.x() + 2 * h, x.y()) - f(x.x() - 2 * h, x.y()))) /
           (12 * h);
  };
  auto d4y_s = [&](auto f) {
    return (8.0 * (f(x.x(), x.y() + h) - f(x.x(), x.y() - h)) -
            (f(x.x(), x.y() + 2 * h) - f(x.x(), x.y() - 2 * h))) /
           (12 * h);
  };
  const Vec2 ut = (8.0 * (u(x.x(), x.y(), t + h) - u(x.x(), x.y(), t - h)) -
                   (u(x.x(), x.y(), t + 2 * h) - u(x.x(), x.y(), t - 2 * h))) /
                  (12 * h);
  const Vec2 ux = d4x([&](double a, double b) -> Vec2 { return u(a, b, t); });
  const Vec2 uy = d4y([&](double a, double b) -> Vec2 { return u(a, b, t); });
  const Vec2 px{d4x_s(p), d4y_s(p)};
  const Vec2 uv = u(x.x(), x.y(), t);
  auto lap = [&](int comp) {
    auto f = [&](double a, double b) { return u(a, b, t)[comp]; };
    const double fxx = (-(f(x.x() + 2 * h, x.y()) + f(x.x() - 2 * h, x.y())) +
                        16.0 * (f(x.x() + h, x.y()) + f(x.x() - h, x.y())) -
                        30.0 * f(x.x(), x.y())) /
                       (12 * h * h);
    const double fyy = (-(f(x.x(), x.y() + 2 * h) + f(x.x(), x.y() - 2 * h)) +
                        16.0 * (f(x.x(), x.y() + h) + f(x.x(), x.y() - h)) -
                        30.0 * f(x.x(), x.y())) /
                       (12 * h * h);
    return fxx + fyy;
  };
  Vec2 res;
  for (int i = 0; i < 2; ++i)
    res[i] = ut[i] + uv.x() * ux[i] + uv.y() * uy[i] + px[i] - lap(i);
  return res;
}
}  // namespace

TEST_CASE("taylor-green baseline") {
  auto c = case_taylor_green();

  SUBCASE("divergence-free and momentum-clean (zero body force)") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int i = 0; i < 10; ++i) {
      const Vec2 x{dist(rng), dist(rng)};
      const Vec2 res = fd_momentum_residual(*c, x, 0.3, Side::outside);
      CHECK(res.norm() < 1e-8);
      CHECK(c->body_force(x, 0.3).norm() < 1e-12);
    }
  }

  SUBCASE("unit max speed at t = 0") {
    double vmax = 0.0;
    for (double x = -kPi; x < kPi; x += 0.05)
      for (double y = -kPi; y < kPi; y += 0.05)
        vmax = std::max(vmax, c->velocity({x, y}, 0.0).norm());
    CHECK(vmax == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("static circle case (M2)") {
  auto c = case_static_circle();
  const auto geometry = c->geometry();

  SUBCASE("momentum residual equals the body force on both sides") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    for (double r : {0.4, 0.85, 1.3, 2.1}) {
      const double th = ang(rng);
      const Vec2 x = geometry->to_world(Vec2{r * std::cos(th), r * std::sin(th)}, 0.2);
      const Side side = r < 1.0 ? Side::inside : Side::outside;
      const Vec2 fd = fd_momentum_residual(*c, x, 0.2, side);
      const Vec2 g = c->momentum_residual(x, 0.2, side);
      CHECK((fd - g).norm() < 1e-7 * (1.0 + g.norm()));
    }
  }

  SUBCASE("jumps are nontrivial") {
    CaseJumpProvider jumps(c);
    double max_dun = 0.0, max_p = 0.0, max_dpn = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double th = 2 * kPi * i / 64;
      const JumpSet j = jumps.at(th, 0.0);
      const Vec2 n = geometry->normal(th, 0.0);
      max_dun = std::max(max_dun, (j.jump_Du * n).norm());
      max_p = std::max(max_p, std::abs(j.jump_p));
      max_dpn = std::max(max_dpn, std::abs(j.jump_Dp.dot(n)));
      CHECK(j.jump_u.norm() < 1e-12);
    }
    CHECK(max_dun > 0.5);
    CHECK(max_p > 0.4);
    CHECK(max_dpn > 1.0);
  }

  SUBCASE("jumps decay in time with the fields") {
    CaseJumpProvider jumps(c);
    const JumpSet j0 = jumps.at(1.1, 0.0);
    const JumpSet j1 = jumps.at(1.1, 0.5);
    CHECK(j1.jump_p == doctest::Approx(j0.jump_p * std::exp(-0.5)).epsilon(1e-10));
  }

  SUBCASE("corrupted case is rejected") {
    CircleCaseParams params;
    params.outside_velocity_scale = 1.01;
    CHECK_THROWS_AS(make_circle_case("corrupt", params), ConstructionInvalid);
  }
}

TEST_CASE("moving circle case (M3)") {
  auto c = case_moving_circle();
  const auto geometry = c->geometry();

  SUBCASE("jumps ride with the motion") {
    CaseJumpProvider jumps(c);
    const JumpSet a = jumps.at(0.9, 0.0);
    const JumpSet b = jumps.at(0.9, 0.2);
    CHECK(a.jump_p == doctest::Approx(b.jump_p).epsilon(1e-10));
    CHECK((a.jump_Du - b.jump_Du).norm() < 1e-10);
  }

  SUBCASE("time-derivative jump is active") {
    CaseJumpProvider jumps(c);
    double max_ut = 0.0;
    for (int i = 0; i < 32; ++i)
      max_ut = std::max(max_ut, jumps.at(2 * kPi * i / 32, 0.0).jump_ut.norm());
    CHECK(max_ut > 0.1);
  }

  SUBCASE("momentum residual matches the finite-difference oracle") {
    const double t = 0.15;
    for (double r : {0.5, 1.6}) {
      const Vec2 x = geometry->to_world(Vec2{r, 0.1}, t);
      const Side side = r < 1.0 ? Side::inside : Side::outside;
      const Vec2 fd = fd_momentum_residual(*c, x, t, side);
      const Vec2 g = c->momentum_residual(x, t, side);
      CHECK((fd - g).norm() < 1e-7 * (1.0 + g.norm()));
    }
  }
}
