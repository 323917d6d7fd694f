#include "iim/solver.hpp"

#include <cmath>

#include "iim/spectral_ops.hpp"

namespace iim {

Solver::Solver(SolverConfig config) : config_(std::move(config)) {
  if (config_.mcase) {
    geometry_ = config_.mcase->geometry();
  } else {
    geometry_ = config_.geometry;
    config_.use_body_force = false;
  }
  if (!geometry_) return;

  if (config_.jump_mode == JumpMode::analytic) {
    if (!config_.mcase)
      throw Error("Solver: analytic jump mode needs a manufactured case");
    provider_ = std::make_shared<CaseJumpProvider>(config_.mcase);
  } else {
    auto force = config_.force ? config_.force
                               : (config_.mcase ? config_.mcase->force() : nullptr);
    if (!force) throw Error("Solver: derived jump mode needs a force density");
    DivBodyForceJump div_g;
    if (config_.mcase && config_.use_body_force) {
      auto c = config_.mcase;
      div_g = [c](double theta, double t) {
        const Vec2 x = c->geometry()->position(theta, t);
        auto dg = [&](Side side) {
          const SideJets j = c->jets(x, t, side);
          const Mat2 g = j.u_grad();
          return (g * g).trace() + j.p_hessian().trace();
        };
        return dg(Side::outside) - dg(Side::inside);
      };
    }
    derived_provider_ = std::make_shared<DerivedJumpProvider>(geometry_, force,
                                                              VelocityProbe{}, div_g);
    provider_ = derived_provider_;
  }
}

SolverState Solver::initial_state() const {
  SolverState s;
  if (config_.mcase) {
    s.u_n = sample_velocity(*config_.mcase, config_.spec, 0.0);
  } else {
    s.u_n = VectorGridFunctionD(config_.spec);
  }
  s.u_nm1 = s.u_n;
  s.p_half = GridFunctionD(config_.spec);
  return s;
}

Solver::LevelData Solver::make_level(double t) const {
  LevelData level;
  level.t = t;
  level.valid = true;
  if (!has_interface()) return level;
  level.sides = classify(config_.spec, *geometry_, t);
  level.records = find_intersections(config_.spec, *geometry_, t, level.sides);
  level.jumps.reserve(level.records.size());
  for (const auto& r : level.records) level.jumps.push_back(provider_->at(r.theta, t));
  return level;
}

JumpSet Solver::jump_at(double theta, double t) const { return provider_->at(theta, t); }

void Solver::refresh_probe(const VectorGridFunctionD& u) {
  if (derived_provider_) derived_provider_->set_probe(VelocityProbe{&u});
}

VectorGridFunctionD Solver::advection_single(const VectorGridFunctionD& u,
                                             const LevelData& level) const {
  VectorGridFunctionD adv = advect(u, u);
  if (has_interface())
    correction_advection_gradient(config_.spec, level.records, level.jumps, u).add_to(adv);
  return adv;
}

GridFunctionD Solver::pressure_solve(const GridFunctionD& adv_div, const CorrectionField& c4,
                                     const CorrectionField& c5, double t) {
  GridFunctionD rhs = -1.0 * adv_div;
  const double n2 = static_cast<double>(config_.spec.points()) * config_.spec.points();
  double m = 0.0;
  for (const auto& [k, v] : c4.entries()) m -= v;
  for (const auto& [k, v] : c5.entries()) m += v;
  m /= n2;
  diag_.mean_correction = m;
  for (const auto& [key, v] : c4.entries()) {
    const auto [ix, iy] = c4.node_of(key);
    rhs(ix, iy) -= v;
  }
  for (const auto& [key, v] : c5.entries()) {
    const auto [ix, iy] = c5.node_of(key);
    rhs(ix, iy) += v;
  }
  if (config_.mcase && config_.use_body_force) {
    // the body-force divergence is part of the pressure source; evaluated
    // per side analytically so the interface adds no differencing error
    rhs += sample_div_body_force(*config_.mcase, config_.spec, t);
  }
  rhs.values() -= rhs.mean();
  diag_.rhs_mean = std::abs(rhs.mean());
  return solve_laplacian_h(rhs);
}

GridFunctionD Solver::initial_pressure(const VectorGridFunctionD& u0, double t) {
  refresh_probe(u0);
  LevelData level = make_level(t);
  VectorGridFunctionD adv = advection_single(u0, level);
  CorrectionField c4(config_.spec), c5(config_.spec);
  if (has_interface()) {
    c4 = correction_advection_divergence(config_.spec, level.records, level.jumps);
    c5 = correction_pressure_poisson(config_.spec, level.records, level.jumps);
  }
  return pressure_solve(divergence_h(adv), c4, c5, t);
}

GridFunctionD Solver::recover_pressure_at(const SolverState& state) {
  refresh_probe(state.u_n);
  LevelData level = make_level(state.t_n);
  VectorGridFunctionD adv = advection_single(state.u_n, level);
  CorrectionField c4(config_.spec), c5(config_.spec);
  if (has_interface()) {
    c4 = correction_advection_divergence(config_.spec, level.records, level.jumps);
    c5 = correction_pressure_poisson(config_.spec, level.records, level.jumps);
  }
  return pressure_solve(divergence_h(adv), c4, c5, state.t_n);
}

void Solver::advance(SolverState& state, bool first) {
  const GridSpec& spec = config_.spec;
  const double tau = config_.tau();
  const double t_n = state.t_n;
  const double t_np1 = t_n + tau;
  const double t_mid = t_n + 0.5 * tau;

  refresh_probe(state.u_n);

  if (!level_n_.valid || level_n_.t != t_n) level_n_ = make_level(t_n);
  if (first) level_nm1_ = level_n_;
  LevelData level_np1 = make_level(t_np1);
  LevelData level_mid = make_level(t_mid);

  // advection term: extrapolated for n >= 1, single level on the first step
  VectorGridFunctionD adv(spec);
  if (first) {
    adv = advection_single(state.u_n, level_n_);
  } else {
    VectorGridFunctionD a_n = advection_single(state.u_n, level_n_);
    VectorGridFunctionD a_nm1 = advection_single(state.u_nm1, level_nm1_);
    adv = 1.5 * a_n - 0.5 * a_nm1;
  }

  // pressure: corrected Poisson solve at the half time (old time on step one)
  const LevelData& level_p = first ? level_n_ : level_mid;
  CorrectionField c4(spec), c5(spec);
  if (has_interface()) {
    c4 = correction_advection_divergence(spec, level_p.records, level_p.jumps);
    c5 = correction_pressure_poisson(spec, level_p.records, level_p.jumps);
  }
  GridFunctionD p = pressure_solve(divergence_h(adv), c4, c5, level_p.t);
  VectorGridFunctionD grad_p = gradient_h(p);
  if (has_interface())
    correction_pressure_gradient(spec, level_p.records, level_p.jumps).add_to(grad_p);

  // diffusion corrections at both levels of the Crank-Nicolson average
  VectorCorrectionField c3(spec);
  if (has_interface()) {
    c3 = correction_velocity_laplacian(spec, level_n_.records, level_n_.jumps);
    c3 += correction_velocity_laplacian(spec, level_np1.records, level_np1.jumps);
    c3 = 0.5 * c3;
  }

  // time-crossing corrections
  VectorCorrectionField c1(spec), c7(spec);
  std::vector<CrossingEvent> events;
  std::vector<JumpSet> event_jumps;
  if (has_interface()) {
    events = crossing_events(spec, *geometry_, t_n, t_np1);
    event_jumps.reserve(events.size());
    for (const auto& ev : events)
      event_jumps.push_back(jump_at(ev.theta, t_n + ev.fraction * tau));
    if (config_.enable_C1) c1 = build_C1(spec, events, event_jumps);
    if (config_.enable_C7)
      c7 = build_C7(spec, events, event_jumps, events_prev_, event_jumps_prev_, first);
  }
  diag_.crossings = static_cast<int>(events.size());

  // explicit right side of the Helmholtz solve
  VectorGridFunctionD rhs = state.u_n;
  VectorGridFunctionD lap_n{laplacian_h(state.u_n[0]), laplacian_h(state.u_n[1])};
  VectorGridFunctionD forcing = -1.0 * adv - grad_p + 0.5 * lap_n;
  c3.add_to(forcing);
  c1.add_to(forcing);
  c7.add_to(forcing);
  if (config_.mcase && config_.use_body_force) {
    forcing += sample_body_force(*config_.mcase, spec, t_mid);
  }
  rhs += tau * forcing;

  VectorGridFunctionD u_new{cn_resolvent(rhs[0], tau), cn_resolvent(rhs[1], tau)};

  // diagnostics and divergence guard
  double res = 0.0;
  for (int c = 0; c < 2; ++c) {
    GridFunctionD r = u_new[c] - (tau / 2.0) * laplacian_h(u_new[c]) - rhs[c];
    res = std::max(res, r.max_abs());
  }
  diag_.helmholtz_residual = res;
  diag_.divergence_max = divergence_h(u_new).max_abs();
  diag_.max_velocity = u_new.max_abs();
  if (!u_new.all_finite() || diag_.max_velocity > 1e6 * (1.0 + state.u_n.max_abs()))
    throw Diverged("velocity blew up at step " + std::to_string(state.step_index + 1));

  state.u_nm1 = std::move(state.u_n);
  state.u_n = std::move(u_new);
  state.p_half = std::move(p);
  state.t_n = t_np1;
  state.step_index += 1;

  level_nm1_ = std::move(level_n_);
  level_n_ = std::move(level_np1);
  events_prev_ = std::move(events);
  event_jumps_prev_ = std::move(event_jumps);
}

void Solver::first_step(SolverState& state) {
  if (state.step_index != 0) throw Error("first_step: state already advanced");
  advance(state, true);
}

void Solver::step(SolverState& state) {
  if (state.step_index < 1) throw Error("step: take the first step first");
  advance(state, false);
}

SolverState Solver::run(const StepCallback& on_step) {
  SolverState state = initial_state();
  if (on_step) on_step(state, diag_);
  const double tau = config_.tau();
  const int n_steps = static_cast<int>(std::floor(config_.T / tau + 1e-9));
  for (int n = 0; n < n_steps; ++n) {
    if (n == 0)
      first_step(state);
    else
      step(state);
    if (on_step) on_step(state, diag_);
  }
  return state;
}

}  // namespace iim
