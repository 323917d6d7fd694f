#include "iim/studies.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "iim/opnorm.hpp"
#include "iim/spectral_ops.hpp"

namespace iim {

namespace {

double constant_free_max(const GridFunctionD& diff, bool midrange) {
  if (midrange) {
    const double lo = diff.values().minCoeff();
    const double hi = diff.values().maxCoeff();
    return 0.5 * (hi - lo);
  }
  return (diff.values() - diff.mean()).abs().maxCoeff();
}

double velocity_error(const SolverState& state, const ManufacturedCase& c) {
  auto exact = sample_velocity(c, state.u_n.spec(), state.t_n);
  double e = 0.0;
  for (int comp = 0; comp < 2; ++comp)
    e = std::max(e, (state.u_n[comp].values() - exact[comp].values()).abs().maxCoeff());
  return e;
}

}  // namespace

ErrorReport convergence_study(const std::shared_ptr<const ManufacturedCase>& mcase,
                              const std::vector<int>& n_list, const StudyOptions& opts) {
  ErrorReport report;
  report.case_name = mcase->name();
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw Error("convergence_study: grid list must ascend");
    SolverConfig cfg;
    cfg.spec = GridSpec(n_list[i]);
    cfg.lambda = opts.lambda;
    cfg.T = opts.T;
    cfg.mcase = mcase;
    cfg.jump_mode = opts.jump_mode;
    cfg.enable_C1 = opts.enable_C1;
    cfg.enable_C7 = opts.enable_C7;
    Solver solver(cfg);

    // velocity error at every step; pressure at a few snapshot times
    const double tau = cfg.tau();
    const int n_steps = static_cast<int>(std::floor(cfg.T / tau + 1e-9));
    std::set<int> pressure_steps;
    for (int k = 1; k <= opts.pressure_snapshots; ++k) {
      int s = static_cast<int>(std::llround(static_cast<double>(k) * n_steps /
                                            opts.pressure_snapshots));
      if (s >= 1) pressure_steps.insert(std::min(s, n_steps));
    }

    ConvergenceRow row;
    row.n = n_list[i];
    row.h = cfg.spec.spacing();
    row.tau = tau;
    row.lambda = opts.lambda;
    row.T = cfg.T;
    solver.run([&](const SolverState& s, const StepDiagnostics& d) {
      row.vel_err = std::max(row.vel_err, velocity_error(s, *mcase));
      if (s.step_index > 0) row.max_m = std::max(row.max_m, std::abs(d.mean_correction));
      if (pressure_steps.count(s.step_index)) {
        GridFunctionD p = solver.recover_pressure_at(s);
        GridFunctionD q = sample_pressure(*mcase, cfg.spec, s.t_n);
        GridFunctionD diff = p - q;
        row.p_err = std::max(row.p_err, constant_free_max(diff, false));
        row.p_err_midrange = std::max(row.p_err_midrange, constant_free_max(diff, true));
      }
    });
    if (!report.rows.empty()) {
      const auto& prev = report.rows.back();
      row.vel_rate = std::log2(prev.vel_err / row.vel_err);
      row.p_rate = std::log2(prev.p_err / row.p_err);
    }
    report.rows.push_back(row);
  }
  return report;
}

std::vector<ConsistencyRow> consistency_study(
    const std::shared_ptr<const ManufacturedCase>& mcase, const std::vector<int>& n_list,
    double t) {
  std::vector<ConsistencyRow> rows;
  struct Acc {
    double lap_i = 0, lap_r = 0, grad_i = 0, grad_r = 0, adv_i = 0, adv_r = 0, poi_i = 0,
           poi_r = 0;
  };
  std::vector<Acc> accs;

  for (int n : n_list) {
    GridSpec spec(n);
    Acc acc;
    const bool interface = mcase->has_interface();
    std::vector<IntersectionRecord> records;
    std::vector<JumpSet> jumps;
    SideField sides;
    if (interface) {
      sides = classify(spec, *mcase->geometry(), t);
      records = find_intersections(spec, *mcase->geometry(), t, sides);
      CaseJumpProvider provider(mcase);
      for (const auto& r : records) jumps.push_back(provider.at(r.theta, t));
    }
    auto u = sample_velocity(*mcase, spec, t);
    auto q = sample_pressure(*mcase, spec, t);

    VectorCorrectionField c2(spec), c3(spec), c6(spec);
    CorrectionField c4(spec), c5(spec);
    if (interface) {
      c2 = correction_advection_gradient(spec, records, jumps, u);
      c3 = correction_velocity_laplacian(spec, records, jumps);
      c4 = correction_advection_divergence(spec, records, jumps);
      c5 = correction_pressure_poisson(spec, records, jumps);
      c6 = correction_pressure_gradient(spec, records, jumps);
    }

    VectorGridFunctionD lap{laplacian_h(u[0]), laplacian_h(u[1])};
    c3.add_to(lap);
    VectorGridFunctionD gq = gradient_h(q);
    c6.add_to(gq);
    VectorGridFunctionD adv = advect(u, u);
    c2.add_to(adv);
    GridFunctionD poisson = laplacian_h(q) + divergence_h(adv);
    c4.add_to(poisson);
    GridFunctionD c5_dense = c5.to_grid();
    poisson -= c5_dense;
    if (mcase->has_interface())
      poisson -= sample_div_body_force(*mcase, spec, t);

    std::set<std::pair<int, int>> irregular;
    auto collect = [&](const CorrectionField& f) {
      for (const auto& [k, v] : f.entries()) irregular.insert(f.node_of(k));
    };
    for (int comp = 0; comp < 2; ++comp) {
      collect(c2.comp[comp]);
      collect(c3.comp[comp]);
      collect(c6.comp[comp]);
    }
    collect(c4);
    collect(c5);

    const int m = spec.points();
    for (int iy = 0; iy < m; ++iy) {
      for (int ix = 0; ix < m; ++ix) {
        const Vec2 x{spec.coord(ix), spec.coord(iy)};
        const Side side =
            interface ? (sides.side(ix, iy) > 0 ? Side::outside : Side::inside) : Side::outside;
        const SideJets jets = mcase->jets(x, t, side);
        const Mat2 g = jets.u_grad();
        const Vec2 lap_ex{jets.u_hessian(0).trace(), jets.u_hessian(1).trace()};
        const Vec2 gq_ex = jets.p_grad();
        const Vec2 adv_ex = g * jets.u_value();
        double el = 0, eg = 0, ea = 0;
        for (int comp = 0; comp < 2; ++comp) {
          el = std::max(el, std::abs(lap[comp](ix, iy) - lap_ex[comp]));
          eg = std::max(eg, std::abs(gq[comp](ix, iy) - gq_ex[comp]));
          ea = std::max(ea, std::abs(adv[comp](ix, iy) - adv_ex[comp]));
        }
        // (the exact pressure satisfies lap q = -div(u.grad u) + div g)
        const double ep = std::abs(poisson(ix, iy));
        if (irregular.count({ix, iy})) {
          acc.lap_i = std::max(acc.lap_i, el);
          acc.grad_i = std::max(acc.grad_i, eg);
          acc.adv_i = std::max(acc.adv_i, ea);
          acc.poi_i = std::max(acc.poi_i, ep);
        } else {
          acc.lap_r = std::max(acc.lap_r, el);
          acc.grad_r = std::max(acc.grad_r, eg);
          acc.adv_r = std::max(acc.adv_r, ea);
          acc.poi_r = std::max(acc.poi_r, ep);
        }
      }
    }
    accs.push_back(acc);
  }

  auto emit = [&](const std::string& op, const std::string& region, auto member) {
    for (std::size_t i = 0; i < accs.size(); ++i) {
      ConsistencyRow row;
      row.op = op;
      row.region = region;
      row.n = n_list[i];
      row.h = GridSpec(n_list[i]).spacing();
      row.max_residual = accs[i].*member;
      if (i > 0 && row.max_residual > 0.0 && accs[i - 1].*member > 0.0)
        row.order = std::log2(accs[i - 1].*member / row.max_residual);
      rows.push_back(row);
    }
  };
  emit("laplacian_u", "irregular", &Acc::lap_i);
  emit("laplacian_u", "regular", &Acc::lap_r);
  emit("gradient_p", "irregular", &Acc::grad_i);
  emit("gradient_p", "regular", &Acc::grad_r);
  emit("advection", "irregular", &Acc::adv_i);
  emit("advection", "regular", &Acc::adv_r);
  emit("poisson_residual", "irregular", &Acc::poi_i);
  emit("poisson_residual", "regular", &Acc::poi_r);
  return rows;
}

std::pair<double, double> fit_log_slope(const std::vector<double>& hs,
                                        const std::vector<double>& values) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(values.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::abs(std::log(hs[i]));
    sx += x;
    sy += values[i];
    sxx += x * x;
    sxy += x * values[i];
  }
  const double c2 = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double c1 = (sy - c2 * sx) / n;
  return {c1, c2};
}

std::vector<OpNormRow> operator_norm_study(const std::vector<int>& n_list,
                                           const std::vector<int>& power_list, double lambda) {
  std::vector<OpNormRow> rows;
  auto push = [&](const std::string& op, int n, int power, double value) {
    OpNormRow r;
    r.op = op;
    r.n_grid = n;
    r.h = GridSpec(n).spacing();
    r.n_power = power;
    r.value = value;
    rows.push_back(r);
  };

  for (int n : n_list) {
    GridSpec spec(n);
    const double tau = lambda * spec.spacing();
    Symbol dplus = symbols::forward_diff(spec, 0);
    Symbol inv = symbols::inv_sigma_h(spec);

    push("A", n, 0, maxnorm_of_multiplier(symbols::op_A(spec), spec));
    push("A_norm_bound", n, 0, multiplier_norm_bound(symbols::op_A(spec), spec, 2));
    push("inv_lap", n, 0, maxnorm_of_multiplier(inv, spec));
    push("D_inv_lap", n, 0, maxnorm_of_multiplier(dplus * inv, spec));
    push("D2_inv_lap", n, 0, maxnorm_of_multiplier(dplus * dplus * inv, spec));

    // componentwise matrix multipliers of the two projections
    auto projection_norm = [&](bool exact_projection) {
      std::array<std::array<Symbol, 2>, 2> sym;
      Symbol invlap = exact_projection ? symbols::inv_sigma_0(spec) : symbols::inv_sigma_h(spec);
      for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l) {
          Symbol di = symbols::centered_diff(spec, i);
          Symbol dl = symbols::centered_diff(spec, l);
          Symbol off = di * dl * invlap;
          const bool diag = i == l;
          sym[i][l] = Symbol(spec, [off, diag](int kx, int ky) {
            const std::complex<double> base = diag ? 1.0 : 0.0;
            return base - off(kx, ky);
          });
        }
      return maxnorm_of_matrix_multiplier(sym, spec);
    };
    push("P0", n, 0, projection_norm(true));
    push("tildeP", n, 0, projection_norm(false));

    Symbol r_symbol = symbols::cn_resolvent(spec, tau);
    Symbol s_symbol = symbols::cn_step(spec, tau);
    for (int p : power_list) {
      push("S_pow", n, p, maxnorm_of_multiplier(s_symbol.pow(p), spec));
      push("D_S_pow_R", n, p, maxnorm_of_multiplier(dplus * s_symbol.pow(p) * r_symbol, spec));
    }
  }

  // fitted bounds per operator family
  auto fill_fit = [&](const std::string& op, auto fn) {
    for (auto& r : rows)
      if (r.op == op) r.fitted_bound = fn(r);
  };
  for (const char* flat : {"A", "A_norm_bound", "inv_lap", "D_inv_lap"}) {
    double worst = 0.0;
    for (const auto& r : rows)
      if (r.op == flat) worst = std::max(worst, r.value);
    fill_fit(flat, [worst](const OpNormRow&) { return worst; });
  }
  {
    std::vector<double> hs, vals;
    for (const auto& r : rows)
      if (r.op == "D2_inv_lap") {
        hs.push_back(r.h);
        vals.push_back(r.value);
      }
    const auto [c1, c2] = fit_log_slope(hs, vals);
    fill_fit("D2_inv_lap",
             [c1, c2](const OpNormRow& r) { return c1 + c2 * std::abs(std::log(r.h)); });
  }
  for (const char* logop : {"P0", "tildeP"}) {
    std::vector<double> hs, vals;
    for (const auto& r : rows)
      if (r.op == logop) {
        hs.push_back(r.h);
        vals.push_back(r.value);
      }
    const auto [c1, c2] = fit_log_slope(hs, vals);
    fill_fit(logop, [c1, c2](const OpNormRow& r) { return c1 + c2 * std::abs(std::log(r.h)); });
  }
  {
    double k3 = 0.0, k4 = 0.0;
    for (const auto& r : rows) {
      if (r.op == "S_pow") k3 = std::max(k3, r.value);
      if (r.op == "D_S_pow_R")
        k4 = std::max(k4, r.value * std::sqrt(r.n_power * lambda * r.h));
    }
    fill_fit("S_pow", [k3](const OpNormRow&) { return k3; });
    fill_fit("D_S_pow_R", [k4, lambda](const OpNormRow& r) {
      return k4 / std::sqrt(r.n_power * lambda * r.h);
    });
  }
  return rows;
}

void write_csv(const std::string& path, const ErrorReport& report) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << "case,N,h,tau,lambda,T,vel_err,p_err,p_err_midrange,max_m,vel_rate,p_rate\n";
  for (const auto& r : report.rows) {
    out << report.case_name << ',' << r.n << ',' << r.h << ',' << r.tau << ',' << r.lambda << ','
        << r.T << ',' << r.vel_err << ',' << r.p_err << ',' << r.p_err_midrange << ','
        << r.max_m << ',' << r.vel_rate << ',' << r.p_rate << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<ConsistencyRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << "operator,region,N,h,max_residual,order\n";
  for (const auto& r : rows)
    out << r.op << ',' << r.region << ',' << r.n << ',' << r.h << ',' << r.max_residual << ','
        << r.order << '\n';
}

void write_csv(const std::string& path, const std::vector<OpNormRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << "operator,N,h,n,value,fitted_bound\n";
  for (const auto& r : rows)
    out << r.op << ',' << r.n_grid << ',' << r.h << ',' << r.n_power << ',' << r.value << ','
        << r.fitted_bound << '\n';
}

void write_snapshot(const std::string& path, const GridFunctionD& field, const std::string& name,
                    double t) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  const GridSpec& spec = field.spec();
  out << "# N=" << spec.n << ",L=" << spec.half_period << ",t=" << t << ",field=" << name
      << "\n";
  out << "ix,iy,x,y,value\n";
  const int m = spec.points();
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix)
      out << ix << ',' << iy << ',' << spec.coord(ix) << ',' << spec.coord(iy) << ','
          << field(ix, iy) << '\n';
}

}  // namespace iim
