// Command-line driver: single solves with snapshots, convergence and
// stencil-consistency studies on the manufactured cases, and the
// operator-norm study. All reports are CSV.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iim/config.hpp"
#include "iim/studies.hpp"

namespace {

using namespace iim;

std::vector<int> parse_grids(const std::string& grids) {
  std::vector<int> out;
  std::stringstream ss(grids);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw ConfigError("empty grid list");
  return out;
}

int cmd_run(const Config& cfg, const std::string& out_dir) {
  SolverConfig sc = build_solver_config(cfg);
  Solver solver(sc);
  std::vector<double> snapshot_times = cfg.get_list("snapshot_times");
  std::filesystem::create_directories(out_dir);

  std::size_t next_snap = 0;
  int snap_id = 0;
  const double tau = sc.tau();
  auto maybe_snapshot = [&](const SolverState& s) {
    while (next_snap < snapshot_times.size() && s.t_n >= snapshot_times[next_snap] - 0.5 * tau) {
      const std::string stem = out_dir + "/snap" + std::to_string(snap_id);
      write_snapshot(stem + "_u0.csv", s.u_n[0], "u0", s.t_n);
      write_snapshot(stem + "_u1.csv", s.u_n[1], "u1", s.t_n);
      write_snapshot(stem + "_p.csv", s.p_half, "p_half", s.t_n);
      ++next_snap;
      ++snap_id;
    }
  };

  double vel_err = 0.0;
  SolverState final_state = solver.run([&](const SolverState& s, const StepDiagnostics& d) {
    maybe_snapshot(s);
    if (sc.mcase) {
      auto exact = sample_velocity(*sc.mcase, sc.spec, s.t_n);
      for (int c = 0; c < 2; ++c)
        vel_err = std::max(vel_err,
                           (s.u_n[c].values() - exact[c].values()).abs().maxCoeff());
    }
    if (s.step_index % 10 == 0 || s.t_n + 1e-12 >= sc.T) {
      std::printf("step %4d  t=%.4f  max|u|=%.4f  div=%.2e  crossings=%d\n", s.step_index,
                  s.t_n, d.max_velocity, d.divergence_max, d.crossings);
    }
  });

  const std::string stem = out_dir + "/final";
  write_snapshot(stem + "_u0.csv", final_state.u_n[0], "u0", final_state.t_n);
  write_snapshot(stem + "_u1.csv", final_state.u_n[1], "u1", final_state.t_n);
  GridFunctionD p = solver.recover_pressure_at(final_state);
  write_snapshot(stem + "_p.csv", p, "p", final_state.t_n);
  if (sc.mcase) std::printf("max velocity error vs exact: %.6e\n", vel_err);
  std::printf("done: %d steps to t=%.4f, output in %s\n", final_state.step_index,
              final_state.t_n, out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic incompressible flow with a sharp immersed interface"};
  app.require_subcommand(1);

  std::string config_path, case_name, grids = "32,64", out_path, jump_mode;
  std::string powers = "1,2,4,8,16,32,64,128,256";
  double lambda = 0.5, T = 0.25;
  int n = 32;
  bool no_c7 = false, no_c1 = false;

  auto* run = app.add_subcommand("run", "single solve with snapshots");
  run->add_option("--config", config_path, "config file (key = value lines)");
  run->add_option("--case", case_name, "manufactured case name");
  run->add_option("--n", n, "grid parameter N (2N nodes per axis)");
  run->add_option("--lambda", lambda, "tau/h ratio");
  run->add_option("--T", T, "final time");
  run->add_option("--jump-mode", jump_mode, "analytic | derived");
  run->add_option("--out", out_path, "output directory")->default_val("out");
  run->add_flag("--no-c7", no_c7, "disable the C7 crossing corrections");
  run->add_flag("--no-c1", no_c1, "disable the C1 crossing correction");

  auto* conv = app.add_subcommand("converge", "manufactured-solution convergence study");
  conv->add_option("--case", case_name, "case name")->required();
  conv->add_option("--grids", grids, "comma list of N values");
  conv->add_option("--lambda", lambda, "tau/h ratio");
  conv->add_option("--T", T, "final time");
  conv->add_option("--out", out_path, "CSV path")->default_val("converge.csv");
  conv->add_option("--jump-mode", jump_mode, "analytic | derived");
  conv->add_flag("--no-c7", no_c7, "disable the C7 crossing corrections");

  auto* cons = app.add_subcommand("consistency", "corrected-stencil consistency study");
  cons->add_option("--case", case_name, "case name")->required();
  cons->add_option("--grids", grids, "comma list of N values");
  cons->add_option("--out", out_path, "CSV path")->default_val("consistency.csv");

  auto* opn = app.add_subcommand("opnorms", "exact operator norms and fitted bounds");
  opn->add_option("--grids", grids, "comma list of N values");
  opn->add_option("--powers", powers, "comma list of time-step powers");
  opn->add_option("--lambda", lambda, "tau/h ratio");
  opn->add_option("--out", out_path, "CSV path")->default_val("opnorms.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      Config cfg = config_path.empty() ? Config{} : Config::from_file(config_path);
      if (!case_name.empty()) cfg.set("case", case_name);
      if (run->count("--n")) cfg.set("n", std::to_string(n));
      if (run->count("--lambda")) cfg.set("lambda", std::to_string(lambda));
      if (run->count("--T")) cfg.set("T", std::to_string(T));
      if (!jump_mode.empty()) cfg.set("jump_mode", jump_mode);
      if (no_c7) cfg.set("enable_c7", "false");
      if (no_c1) cfg.set("enable_c1", "false");
      if (!cfg.has("case") && cfg.get("geometry.kind").empty())
        throw ConfigError("run: need --case or a geometry.* config (known cases: " +
                          [] {
                            std::string s;
                            for (const auto& name : known_case_names()) s += name + " ";
                            return s;
                          }());
      return cmd_run(cfg, out_path);
    }
    if (conv->parsed()) {
      StudyOptions opts;
      opts.lambda = lambda;
      opts.T = T;
      opts.enable_C7 = !no_c7;
      if (jump_mode == "derived") opts.jump_mode = JumpMode::derived;
      ErrorReport report = convergence_study(case_by_name(case_name), parse_grids(grids), opts);
      write_csv(out_path, report);
      for (const auto& r : report.rows)
        std::printf("N=%4d  vel_err=%.4e (rate %.2f)  p_err=%.4e (rate %.2f)\n", r.n, r.vel_err,
                    r.vel_rate, r.p_err, r.p_rate);
      std::printf("wrote %s\n", out_path.c_str());
      return 0;
    }
    if (cons->parsed()) {
      auto rows = consistency_study(case_by_name(case_name), parse_grids(grids));
      write_csv(out_path, rows);
      for (const auto& r : rows)
        std::printf("%-18s %-9s N=%4d  residual=%.4e  order=%.2f\n", r.op.c_str(),
                    r.region.c_str(), r.n, r.max_residual, r.order);
      std::printf("wrote %s\n", out_path.c_str());
      return 0;
    }
    if (opn->parsed()) {
      std::vector<int> power_list;
      for (int p : parse_grids(powers)) power_list.push_back(p);
      auto rows = operator_norm_study(parse_grids(grids), power_list, lambda);
      write_csv(out_path, rows);
      std::printf("wrote %s (%zu rows)\n", out_path.c_str(), rows.size());
      return 0;
    }
  } catch (const Diverged& e) {
    std::fprintf(stderr, "solver diverged: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
