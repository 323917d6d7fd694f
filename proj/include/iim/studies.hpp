#pragma once

#include <string>
#include <vector>

#include "iim/solver.hpp"

namespace iim {

struct ConvergenceRow {
  int n = 0;
  double h = 0.0, tau = 0.0, lambda = 0.0, T = 0.0;
  double vel_err = 0.0;
  double p_err = 0.0;           // max norm after mean shift (constant-free)
  double p_err_midrange = 0.0;  // midrange-shift variant, reported alongside
  double max_m = 0.0;           // largest |mean(-C4 + C5)| seen
  double vel_rate = 0.0, p_rate = 0.0;  // vs the previous row; 0 on the first
};

struct ErrorReport {
  std::string case_name;
  std::vector<ConvergenceRow> rows;
};

struct StudyOptions {
  double lambda = 0.5;
  double T = 0.25;
  bool enable_C7 = true;
  bool enable_C1 = true;
  JumpMode jump_mode = JumpMode::analytic;
  int pressure_snapshots = 5;
};

ErrorReport convergence_study(const std::shared_ptr<const ManufacturedCase>& mcase,
                              const std::vector<int>& n_list, const StudyOptions& opts = {});

struct ConsistencyRow {
  std::string op;      // laplacian_u | gradient_p | advection | poisson_residual
  std::string region;  // regular | irregular
  int n = 0;
  double h = 0.0;
  double max_residual = 0.0;
  double order = 0.0;  // vs the previous grid of the same (op, region)
};

/// Residuals of the corrected operators evaluated on the exact solution,
/// split by node class.
std::vector<ConsistencyRow> consistency_study(
    const std::shared_ptr<const ManufacturedCase>& mcase, const std::vector<int>& n_list,
    double t = 0.0);

struct OpNormRow {
  std::string op;
  int n_grid = 0;
  double h = 0.0;
  int n_power = 0;  // 0 for operators without a power parameter
  double value = 0.0;
  double fitted_bound = 0.0;
};

/// Exact maximum norms (kernel l1 sums) of the periodic operators, with
/// fitted constants or log slopes per operator family.
std::vector<OpNormRow> operator_norm_study(const std::vector<int>& n_list,
                                           const std::vector<int>& power_list,
                                           double lambda = 0.5);

// CSV writers; deterministic row order, one header line
void write_csv(const std::string& path, const ErrorReport& report);
void write_csv(const std::string& path, const std::vector<ConsistencyRow>& rows);
void write_csv(const std::string& path, const std::vector<OpNormRow>& rows);

/// Node-value dump with a descriptive header: N, L, t and the field name.
void write_snapshot(const std::string& path, const GridFunctionD& field,
                    const std::string& name, double t);

/// Least-squares fit of value ~ c1 + c2 |log h|.
std::pair<double, double> fit_log_slope(const std::vector<double>& hs,
                                        const std::vector<double>& values);

}  // namespace iim
