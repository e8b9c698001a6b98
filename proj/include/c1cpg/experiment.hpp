#pragma once

#include <string>
#include <vector>

#include "c1cpg/examples.hpp"
#include "c1cpg/metrics.hpp"

namespace c1cpg {

// Declarative experiment description. `steps` holds step sizes k; the horizon
// must be an integer multiple of each. JSON configs accept steps either as
// numbers or as strings like "1/64".
struct ExperimentConfig {
  std::string example = "ex1";  // ex1 | two_body | linear_wave | sine_gordon | custom
  std::string mode = "h_version";  // h_version | p_version | single_run | energy_trace
  std::vector<int> degrees;
  std::vector<double> steps;
  double T = 0.0;        // 0 selects the example default
  double tol = 1e-13;
  int max_iters = 200;
  int quad_points = 0;   // 0 selects r + 8
  int space_degree = 0;  // PDE only; 0 selects the example default
  int space_quad = 0;    // PDE only; 0 selects degree + 4 per direction
  bool timing = true;    // false writes wall_ms as 0 for reproducible bytes
  std::string out_dir = "out";
};

ExperimentConfig load_config(const std::string& path);  // throws ConfigError

// One (r, k) cell of a sweep. Failed cells keep their error message and leave
// the metric fields NaN (serialized as empty/null).
struct CellResult {
  int r = 0;
  double k = 0.0;
  int intervals = 0;
  bool ok = false;
  std::string error;

  double l2 = 0, h1 = 0, h2 = 0, linf = 0, dlinf = 0;
  double nodal_val = 0, nodal_deriv = 0;
  double l2_eoc = 0, h1_eoc = 0, h2_eoc = 0, linf_eoc = 0;
  double nodal_val_eoc = 0, nodal_deriv_eoc = 0;

  int iters_max = 0;
  double final_update_max = 0.0;
  double wall_ms = 0.0;
  long long dof_total = 0;  // (r+1) N coefficients
  long long dof_free = 0;   // (r-1) N after the two initial conditions
  bool contraction_all_ok = true;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<CellResult> cells;
  EnergySeries energy;       // filled in energy_trace mode
  bool has_energy = false;
  bool any_failed = false;
  std::vector<std::string> notes;
};

// Runs every cell of the sweep sequentially; per-cell failures are recorded,
// not rethrown. `custom_problem` backs the "custom" example id (API only).
RunReport run(const ExperimentConfig& config,
              const ProblemDef* custom_problem = nullptr);

std::string csv_string(const RunReport& report);
std::string energy_csv_string(const EnergySeries& series);
void write_report_files(const RunReport& report);  // report.csv/.json (+energy.csv)

// run + write into config.out_dir; returns the process exit code contract:
// 0 success, 1 any cell failed.
int run_and_write(const ExperimentConfig& config,
                  const ProblemDef* custom_problem = nullptr);

}  // namespace c1cpg
