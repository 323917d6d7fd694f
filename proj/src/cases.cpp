#include "iim/cases.hpp"

#include <cmath>
#include <numbers>

namespace iim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double val(double x) { return x; }
inline double val(const Jet2& x) { return x.v; }

// C4 polynomial ramp (integral of x^4 (1-x)^4, normalized); its moderate
// high-order derivatives keep the difference-operator truncation constants
// small on the grids used here.
template <class T>
T smoothstep(const T& x) {
  if (val(x) <= 0.0) return T(0.0);
  if (val(x) >= 1.0) return T(1.0);
  return x * x * x * x * x *
         (126.0 + x * (-420.0 + x * (540.0 + x * (-315.0 + x * 70.0))));
}

template <class T>
T smoothstep_d(const T& x) {
  if (val(x) <= 0.0 || val(x) >= 1.0) return T(0.0);
  const T a = x * (1.0 - x);
  return 630.0 * a * a * a * a;
}

/// 1 for r <= r1, 0 for r >= r2, smooth in between.
template <class T>
T cutoff(const T& r, double r1, double r2) {
  return 1.0 - smoothstep((r - r1) / (r2 - r1));
}

template <class T>
T cutoff_d(const T& r, double r1, double r2) {
  return (-1.0 / (r2 - r1)) * smoothstep_d((r - r1) / (r2 - r1));
}

// Envelope of the jump-carrying pieces: flat to first order at the interface
// (so the jump relations stay exact) and C4 at the support edge.
template <class T>
T bump_env(const T& d, double width) {
  if (val(d) >= width) return T(0.0);
  const T s = d * (1.0 / width);
  const T one_m = 1.0 - s * s;
  return one_m * one_m * one_m * one_m * one_m;
}

template <class T>
T bump_env_d(const T& d, double width) {
  if (val(d) >= width) return T(0.0);
  const T s = d * (1.0 / width);
  const T one_m = 1.0 - s * s;
  return (-10.0 / (width * width)) * d * one_m * one_m * one_m * one_m;
}

// Cut radii of the swirl profile and support widths of the jump envelopes;
// everything vanishes well before the box edge.
constexpr double kCutSwirlLo = 1.45, kCutSwirlHi = 2.75;
constexpr double kRhoWidth = 1.55;
constexpr double kPressWidth = 1.6;

struct CircleFields {
  CircleCaseParams p;

  Jet2 rho(const Jet2& r) const {
    const Jet2 d = r - p.radius;
    return 0.5 * p.shear_jump * d * d * bump_env(d, kRhoWidth);
  }
  Jet2 drho(const Jet2& r) const {
    const Jet2 d = r - p.radius;
    return p.shear_jump * d * bump_env(d, kRhoWidth) +
           0.5 * p.shear_jump * d * d * bump_env_d(d, kRhoWidth);
  }

  // velocity relative to the translation, in body coordinates, no time factor
  std::array<Jet2, 2> swirl(const Jet2& y1, const Jet2& y2, Side side) const {
    const Jet2 r2 = y1 * y1 + y2 * y2;
    Jet2 cutw(1.0);
    if (val(r2) > kCutSwirlLo * kCutSwirlLo) cutw = cutoff(sqrt(r2), kCutSwirlLo, kCutSwirlHi);
    const Jet2 s = (p.swirl_lin + p.swirl_cub * r2) * cutw;
    std::array<Jet2, 2> v = {Jet2(0.0) - y2 * s, y1 * s};
    if (side == Side::outside) {
      const Jet2 r = sqrt(r2);
      const Jet2 th = atan2(y2, y1);
      const Jet2 c = cos(double(p.mode) * th);
      const Jet2 dc = -double(p.mode) * sin(double(p.mode) * th);
      // z x grad(rho c): drho c that - (rho/r) dc rhat
      const Jet2 a = drho(r) * c / r;
      const Jet2 b = rho(r) * dc / r2;
      v[0] = v[0] - y2 * a - y1 * b;
      v[1] = v[1] + y1 * a - y2 * b;
      if (p.outside_velocity_scale != 1.0) {
        v[0] = v[0] * p.outside_velocity_scale;
        v[1] = v[1] * p.outside_velocity_scale;
      }
    }
    return v;
  }

  Jet2 press(const Jet2& y1, const Jet2& y2, Side side) const {
    Jet2 q = p.base_pressure_amp * (cos(y1) + sin(y2));
    if (side == Side::outside) {
      const Jet2 r = sqrt(y1 * y1 + y2 * y2);
      const Jet2 th = atan2(y2, y1);
      const Jet2 aq =
          (p.shear_jump / p.mode) * sin(double(p.mode) * th) + p.pressure_jump_const;
      const Jet2 g = (p.mode * p.shear_jump / p.radius) * sin(double(p.mode) * th);
      const Jet2 d = r - p.radius;
      q = q + (aq + d * g) * bump_env(d, kPressWidth);
    }
    return q;
  }
};

/// Exact tangential force component for the circle cases: f_tan = -[du/dn].
class CircleCaseForce final : public ForceDensity {
 public:
  CircleCaseForce(std::shared_ptr<const InterfaceGeometry> geometry,
                  std::shared_ptr<const ManufacturedCase> c, CircleCaseParams params)
      : ForceDensity(std::move(geometry)), case_(std::move(c)), params_(params) {}

  Vec2 at(double theta, double t) const override {
    const Vec2 x = geometry_->position(theta, t);
    const SideJets in = case_->jets(x, t, Side::inside);
    const SideJets out = case_->jets(x, t, Side::outside);
    const Vec2 n = geometry_->normal(theta, t);
    const Mat2 jump_grad = out.u_grad() - in.u_grad();
    const double jump_p = out.p.v - in.p.v;
    return jump_p * n - jump_grad * n;
  }

  double tangential_derivative(double theta, double t) const override {
    // f_t = -shear_jump cos(mode theta) exp(-decay t)
    return params_.shear_jump * params_.mode * std::sin(params_.mode * theta) *
           std::exp(-params_.decay * t);
  }
  bool has_analytic_tangential_derivative() const override { return true; }

  double normal_derivative(double theta, double t) const override {
    // f.n = [p] = (shear_jump/mode sin(mode theta) + const) exp(-decay t)
    return params_.shear_jump * std::cos(params_.mode * theta) * std::exp(-params_.decay * t);
  }

 private:
  std::shared_ptr<const ManufacturedCase> case_;
  CircleCaseParams params_;
};

}  // namespace

Vec2 ManufacturedCase::momentum_residual(const Vec2& x, double t, Side side) const {
  const SideJets j = jets_(x, t, side);
  const Vec2 u = j.u_value();
  const Mat2 g = j.u_grad();
  const Vec2 vt = velocity_t_(x, t, side);
  Vec2 res;
  for (int i = 0; i < 2; ++i) {
    const Mat2 h = j.u_hessian(i);
    res[i] = vt[i] + g.row(i).dot(u) + j.p_grad()[i] - h.trace();
  }
  return res;
}

double ManufacturedCase::div_body_force(const Vec2& x, double t, Side side) const {
  // div g = tr((grad u)^2) + lap p for divergence-free u with g the momentum
  // residual
  const SideJets j = jets_(x, t, side);
  const Mat2 g = j.u_grad();
  return (g * g).trace() + j.p_hessian().trace();
}

JumpSet CaseJumpProvider::at(double theta, double t) const {
  const auto geometry = case_->geometry();
  const Vec2 x = geometry->position(theta, t);
  const SideJets in = case_->jets(x, t, Side::inside);
  const SideJets out = case_->jets(x, t, Side::outside);

  JumpSet j;
  j.jump_u = out.u_value() - in.u_value();
  j.jump_Du = out.u_grad() - in.u_grad();
  j.jump_D2u[0] = out.u_hessian(0) - in.u_hessian(0);
  j.jump_D2u[1] = out.u_hessian(1) - in.u_hessian(1);
  j.jump_p = out.p.v - in.p.v;
  j.jump_Dp = out.p_grad() - in.p_grad();
  j.jump_D2p = out.p_hessian() - in.p_hessian();
  j.jump_ut = case_->velocity_t(x, t, Side::outside) - case_->velocity_t(x, t, Side::inside);

  auto advection = [](const SideJets& s) {
    const Vec2 u = s.u_value();
    const Mat2 g = s.u_grad();
    Vec2 w = g * u;
    Mat2 dw = g * g;
    for (int i = 0; i < 2; ++i) dw.row(i) += (s.u_hessian(i) * u).transpose();
    return std::make_pair(w, dw);
  };
  const auto [w_out, dw_out] = advection(out);
  const auto [w_in, dw_in] = advection(in);
  j.jump_advection = w_out - w_in;
  j.jump_Dadv = dw_out - dw_in;
  return j;
}

std::shared_ptr<ManufacturedCase> case_taylor_green() {
  auto jets = [](const Vec2& x, double t, Side) {
    const double e2 = std::exp(-2.0 * t);
    const double e4 = std::exp(-4.0 * t);
    const Jet2 xx = Jet2::var_x(x.x());
    const Jet2 yy = Jet2::var_y(x.y());
    SideJets s;
    s.u[0] = -1.0 * cos(xx) * sin(yy) * e2;
    s.u[1] = cos(yy) * sin(xx) * e2;
    s.p = -0.25 * (cos(2.0 * xx) + cos(2.0 * yy)) * e4;
    return s;
  };
  auto vt = [jets](const Vec2& x, double t, Side side) {
    const SideJets s = jets(x, t, side);
    return Vec2(-2.0 * s.u_value());
  };
  auto c = std::make_shared<ManufacturedCase>("taylor-green", nullptr, jets, vt);
  validate_case(*c);
  return c;
}

std::shared_ptr<ManufacturedCase> make_circle_case(std::string name,
                                                   const CircleCaseParams& params) {
  const bool moving = params.translation.squaredNorm() > 0.0;
  auto geometry = std::make_shared<CircleGeometry>(
      params.center, params.radius,
      moving ? MotionLaw::translate(params.translation) : MotionLaw::statics());
  CircleFields fields{params};
  const Vec2 u_trans = params.translation;
  const double decay = params.decay;

  auto jets = [fields, geometry, u_trans, decay](const Vec2& x, double t, Side side) {
    const Vec2 yb = geometry->to_body(x, t);
    const Jet2 y1 = Jet2::var_x(yb.x());
    const Jet2 y2 = Jet2::var_y(yb.y());
    const double damp = std::exp(-decay * t);
    SideJets s;
    const auto v = fields.swirl(y1, y2, side);
    s.u[0] = v[0] * damp + u_trans.x();
    s.u[1] = v[1] * damp + u_trans.y();
    s.p = fields.press(y1, y2, side) * damp;
    return s;
  };
  auto vt = [jets, u_trans, decay](const Vec2& x, double t, Side side) {
    const SideJets s = jets(x, t, side);
    const Vec2 rel = s.u_value() - u_trans;
    return Vec2(-decay * rel - s.u_grad() * u_trans);
  };

  auto c = std::make_shared<ManufacturedCase>(std::move(name), geometry, jets, vt);
  c->set_force(std::make_shared<CircleCaseForce>(geometry, c, params));
  validate_case(*c);
  return c;
}

std::shared_ptr<ManufacturedCase> case_static_circle() {
  return make_circle_case("static-circle", CircleCaseParams{});
}

std::shared_ptr<ManufacturedCase> case_moving_circle() {
  CircleCaseParams p;
  p.decay = 0.0;
  p.translation = {0.5, 0.2};
  return make_circle_case("moving-circle", p);
}

std::shared_ptr<ManufacturedCase> case_by_name(const std::string& name) {
  if (name == "taylor-green") return case_taylor_green();
  if (name == "static-circle") return case_static_circle();
  if (name == "moving-circle") return case_moving_circle();
  std::string known;
  for (const auto& k : known_case_names()) known += " " + k;
  throw ConfigError("unknown case '" + name + "'; known cases:" + known);
}

std::vector<std::string> known_case_names() {
  return {"taylor-green", "static-circle", "moving-circle"};
}

void validate_case(const ManufacturedCase& c) {
  const int samples = 256;
  const double t_checks[] = {0.0, 0.13};

  // divergence-free on each side, away from and near the interface
  for (double t : t_checks) {
    for (int i = 0; i < 32; ++i) {
      const double ang = kTwoPi * i / 32;
      for (double r : {0.3, 0.8, 1.2, 2.0}) {
        Vec2 x{r * std::cos(ang), r * std::sin(ang)};
        if (c.has_interface()) x += c.geometry()->to_world(Vec2::Zero(), t);
        for (Side side : {Side::inside, Side::outside}) {
          const SideJets j = c.jets(x, t, side);
          if (std::abs(j.u_grad().trace()) > 1e-10)
            throw ConstructionInvalid(c.name() + ": velocity not divergence-free");
        }
      }
    }
  }
  if (!c.has_interface()) return;

  const auto geometry = c.geometry();
  const auto force = c.force();
  if (!force) throw ConstructionInvalid(c.name() + ": interface case without force density");

  for (double t : t_checks) {
    double compat = 0.0;
    double scale = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double theta = kTwoPi * i / samples;
      const Vec2 x = geometry->position(theta, t);
      const Vec2 n = geometry->normal(theta, t);
      const SideJets in = c.jets(x, t, Side::inside);
      const SideJets out = c.jets(x, t, Side::outside);
      scale = std::max({scale, in.u_value().norm(), 1.0});

      // [u] = 0
      if ((out.u_value() - in.u_value()).norm() > 1e-12 * scale)
        throw ConstructionInvalid(c.name() + ": velocity jumps across the interface");

      // force consistency with the jump relations
      const Mat2 jump_grad = out.u_grad() - in.u_grad();
      const double jump_p = out.p.v - in.p.v;
      const Vec2 f = force->at(theta, t);
      const Vec2 f_tan = f - f.dot(n) * n;
      if (std::abs(f.dot(n) - jump_p) > 1e-9 * (1.0 + std::abs(jump_p)))
        throw ConstructionInvalid(c.name() + ": [p] != f.n");
      if ((jump_grad * n + f_tan).norm() > 1e-9 * (1.0 + f_tan.norm()))
        throw ConstructionInvalid(c.name() + ": [du/dn] != -f_tan");

      // normal pressure-derivative jump equals the surface divergence of f_tan
      const Vec2 jump_dp = out.p_grad() - in.p_grad();
      const double sdiv = surface_divergence_ftan(*geometry, *force, theta, t);
      if (std::abs(jump_dp.dot(n) - sdiv) > 1e-8 * (1.0 + std::abs(sdiv)))
        throw ConstructionInvalid(c.name() + ": [dp/dn] != surface divergence of f_tan");

      // the advection jump is tangential
      const Vec2 u_gamma = in.u_value();
      const Vec2 jump_adv = (out.u_grad() - in.u_grad()) * u_gamma;
      if (std::abs(jump_adv.dot(n)) > 1e-8 * scale)
        throw ConstructionInvalid(c.name() + ": [u.grad u] . n != 0");

      // prescribed motion carries the material jump: [u_t] = -u.[grad u]
      const Vec2 jump_ut =
          c.velocity_t(x, t, Side::outside) - c.velocity_t(x, t, Side::inside);
      if ((jump_ut + jump_adv).norm() > 1e-8 * scale)
        throw ConstructionInvalid(c.name() + ": [u_t] != -u.[grad u]");

      // momentum residual (the body force) must be continuous
      const Vec2 g_in = c.momentum_residual(x, t, Side::inside);
      const Vec2 g_out = c.momentum_residual(x, t, Side::outside);
      if ((g_out - g_in).norm() > 1e-8 * (1.0 + g_in.norm()))
        throw ConstructionInvalid(c.name() + ": body force jumps across the interface");

      compat += jump_dp.dot(n) * geometry->metric(theta, t);
      // fluid normal velocity matches the interface normal velocity
      const double un = in.u_value().dot(n);
      const double xn = geometry->velocity(theta, t).dot(n);
      if (std::abs(un - xn) > 1e-9 * scale)
        throw ConstructionInvalid(c.name() + ": interface does not move with the fluid");
    }
    compat *= kTwoPi / samples;
    if (std::abs(compat) > 1e-8)
      throw ConstructionInvalid(c.name() + ": integral of [dp/dn] over the interface != 0");
  }
}

VectorGridFunctionD sample_velocity(const ManufacturedCase& c, const GridSpec& spec, double t) {
  VectorGridFunctionD u(spec);
  const int m = spec.points();
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      const Vec2 v = c.velocity({spec.coord(ix), spec.coord(iy)}, t);
      u[0](ix, iy) = v.x();
      u[1](ix, iy) = v.y();
    }
  return u;
}

GridFunctionD sample_pressure(const ManufacturedCase& c, const GridSpec& spec, double t) {
  GridFunctionD p(spec);
  const int m = spec.points();
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix)
      p(ix, iy) = c.pressure({spec.coord(ix), spec.coord(iy)}, t);
  return p;
}

GridFunctionD sample_div_body_force(const ManufacturedCase& c, const GridSpec& spec, double t) {
  GridFunctionD g(spec);
  const int m = spec.points();
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix)
      g(ix, iy) = c.div_body_force({spec.coord(ix), spec.coord(iy)}, t);
  return g;
}

VectorGridFunctionD sample_body_force(const ManufacturedCase& c, const GridSpec& spec, double t) {
  VectorGridFunctionD g(spec);
  const int m = spec.points();
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      const Vec2 v = c.body_force({spec.coord(ix), spec.coord(iy)}, t);
      g[0](ix, iy) = v.x();
      g[1](ix, iy) = v.y();
    }
  return g;
}

}  // namespace iim
