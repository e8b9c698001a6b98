#include "c1cpg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace c1cpg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_step(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) throw ConfigError("step denominator is zero: " + s);
      return num / den;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse step value: " + s);
    }
  }
  throw ConfigError("step entries must be numbers or \"p/q\" strings");
}

void validate(const ExperimentConfig& c) {
  static const std::vector<std::string> examples = {
      "ex1", "two_body", "linear_wave", "sine_gordon", "custom"};
  static const std::vector<std::string> modes = {"h_version", "p_version",
                                                 "single_run", "energy_trace"};
  if (std::find(examples.begin(), examples.end(), c.example) == examples.end())
    throw ConfigError("unknown example id: " + c.example);
  if (std::find(modes.begin(), modes.end(), c.mode) == modes.end())
    throw ConfigError("unknown mode: " + c.mode);
  if (c.degrees.empty()) throw ConfigError("degree list must be nonempty");
  if (c.steps.empty()) throw ConfigError("step list must be nonempty");
  for (int r : c.degrees)
    if (r < 2) throw ConfigError("degrees must be >= 2");
  for (double k : c.steps)
    if (!(k > 0.0)) throw ConfigError("steps must be positive");
  if (c.T < 0.0) throw ConfigError("horizon must be positive");
  if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
  if (c.max_iters < 1) throw ConfigError("max_iters must be >= 1");
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string cell_field(double v) { return std::isnan(v) ? "" : format_g17(v); }

// Interval count for step k over horizon T; k must divide T.
int interval_count(double T, double k) {
  const double ratio = T / k;
  const long long n = std::llround(ratio);
  if (n < 1 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError("step " + format_g17(k) + " does not divide horizon " +
                      format_g17(T));
  return static_cast<int>(n);
}

struct PreparedProblem {
  ProblemDef problem;
  std::shared_ptr<SemiDiscreteSystem> system;  // PDE examples only
  ExactFieldFn exact_field;
  bool is_pde = false;
};

PreparedProblem prepare(const ExperimentConfig& config,
                        const ProblemDef* custom_problem,
                        std::vector<std::string>& notes) {
  PreparedProblem prep;
  if (config.example == "custom") {
    if (custom_problem == nullptr)
      throw ConfigError("example 'custom' requires a caller-supplied problem");
    prep.problem = *custom_problem;
    return prep;
  }
  const ExampleDef& def = find_example(config.example);
  if (!def.is_pde) {
    prep.problem = def.make_problem();
    return prep;
  }
  prep.is_pde = true;
  const int degree =
      config.space_degree > 0 ? config.space_degree : def.default_space_degree;
  SpectralSpace space = build_space(
      def.domain, std::vector<int>(def.domain.size(), degree));
  QuadConfig qc;
  qc.points_per_dir = config.space_quad;
  SemiDiscretized sd = semi_discretize(def.make_pde(), space, qc);
  prep.problem = std::move(sd.problem);
  prep.system = std::move(sd.system);
  prep.exact_field = def.exact_field;
  {
    std::ostringstream note;
    note << "spatial discretization: tensor-product spectral basis, degree "
         << degree << " per direction ("
         << prep.system->space.modes() << " modes)";
    notes.push_back(note.str());
  }
  if (config.example == "linear_wave")
    notes.push_back(
        "the exact solution is a polynomial inside the spectral space, so the "
        "reported errors are purely temporal");
  return prep;
}

CellResult run_cell(const ExperimentConfig& config, const PreparedProblem& prep,
                    int r, double k, EnergySeries* energy_out) {
  CellResult cell;
  cell.r = r;
  cell.k = k;
  cell.l2 = cell.h1 = cell.h2 = cell.linf = cell.dlinf = kNaN;
  cell.nodal_val = cell.nodal_deriv = kNaN;
  cell.l2_eoc = cell.h1_eoc = cell.h2_eoc = cell.linf_eoc = kNaN;
  cell.nodal_val_eoc = cell.nodal_deriv_eoc = kNaN;

  const double T =
      config.T > 0.0
          ? config.T
          : (config.example == "custom" ? 1.0
                                        : find_example(config.example).default_T);
  cell.intervals = interval_count(T, k);
  cell.dof_total = static_cast<long long>(r + 1) * cell.intervals;
  cell.dof_free = static_cast<long long>(r - 1) * cell.intervals;

  SolverOptions opts;
  opts.tol = config.tol;
  opts.max_iters = config.max_iters;
  opts.quad_points = config.quad_points;

  const TimeMesh mesh = build_uniform(T, cell.intervals, r);

  const auto t0 = std::chrono::steady_clock::now();
  CpgSolution sol = solve(prep.problem, mesh, opts);
  const auto t1 = std::chrono::steady_clock::now();
  cell.wall_ms =
      config.timing
          ? std::chrono::duration<double, std::milli>(t1 - t0).count()
          : 0.0;

  cell.iters_max = sol.max_iterations();
  for (const auto& s : sol.stats)
    cell.final_update_max = std::max(cell.final_update_max, s.final_update);
  for (bool okflag : sol.contraction_ok) cell.contraction_all_ok &= okflag;

  if (prep.is_pde) {
    FieldSolution field{std::move(sol), prep.system};
    if (prep.exact_field) {
      cell.l2 = pde_norm_error(field, prep.exact_field, PdeNormKind::L2L2);
      cell.h1 = pde_norm_error(field, prep.exact_field, PdeNormKind::H1L2);
      cell.h2 = pde_norm_error(field, prep.exact_field, PdeNormKind::H2L2);
      cell.linf = pde_norm_error(field, prep.exact_field, PdeNormKind::LinfL2);
      const auto nodal = pde_nodal_errors(field, prep.exact_field);
      cell.nodal_val = nodal.first;
      cell.nodal_deriv = nodal.second;
    }
  } else {
    if (prep.problem.exact) {
      cell.l2 = norm_error(sol, prep.problem.exact, NormKind::L2);
      cell.h1 = norm_error(sol, prep.problem.exact, NormKind::H1);
      cell.h2 = norm_error(sol, prep.problem.exact, NormKind::H2);
      cell.linf = norm_error(sol, prep.problem.exact, NormKind::Linf);
      cell.dlinf = norm_error(sol, prep.problem.exact, NormKind::dLinf);
      const auto nodal = nodal_errors(sol, prep.problem.exact);
      cell.nodal_val = nodal.first;
      cell.nodal_deriv = nodal.second;
    }
    if (energy_out != nullptr) *energy_out = energy_series(sol);
  }
  cell.ok = true;
  return cell;
}

// EOC columns within each degree block, in the listed step order.
void fill_eoc(std::vector<CellResult>& cells) {
  auto fill = [](CellResult& cur, const CellResult& prev) {
    auto one = [&](double e_prev, double e_cur) {
      if (!(e_prev > 0.0) || !(e_cur > 0.0) || prev.k == cur.k) return kNaN;
      return std::log(e_prev / e_cur) / std::log(prev.k / cur.k);
    };
    cur.l2_eoc = one(prev.l2, cur.l2);
    cur.h1_eoc = one(prev.h1, cur.h1);
    cur.h2_eoc = one(prev.h2, cur.h2);
    cur.linf_eoc = one(prev.linf, cur.linf);
    cur.nodal_val_eoc = one(prev.nodal_val, cur.nodal_val);
    cur.nodal_deriv_eoc = one(prev.nodal_deriv, cur.nodal_deriv);
  };
  for (size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].r != cells[i - 1].r) continue;  // first row of a block
    if (!cells[i].ok || !cells[i - 1].ok) continue;
    fill(cells[i], cells[i - 1]);
  }
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ExperimentConfig c;
  try {
    if (j.contains("example")) c.example = j["example"].get<std::string>();
    if (j.contains("mode")) c.mode = j["mode"].get<std::string>();
    if (j.contains("degrees")) c.degrees = j["degrees"].get<std::vector<int>>();
    if (j.contains("steps"))
      for (const auto& v : j["steps"]) c.steps.push_back(parse_step(v));
    if (j.contains("T")) c.T = j["T"].get<double>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("max_iters")) c.max_iters = j["max_iters"].get<int>();
    if (j.contains("quad_points")) c.quad_points = j["quad_points"].get<int>();
    if (j.contains("space_degree")) c.space_degree = j["space_degree"].get<int>();
    if (j.contains("space_quad")) c.space_quad = j["space_quad"].get<int>();
    if (j.contains("timing")) c.timing = j["timing"].get<bool>();
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  validate(c);
  return c;
}

RunReport run(const ExperimentConfig& config, const ProblemDef* custom_problem) {
  validate(config);
  RunReport report;
  report.config = config;

  PreparedProblem prep = prepare(config, custom_problem, report.notes);
  if (config.mode == "energy_trace" && (prep.is_pde || prep.problem.dim != 2))
    throw ConfigError("energy_trace needs a planar second-order system");

  struct Cell {
    int r;
    double k;
  };
  std::vector<Cell> plan;
  if (config.mode == "h_version") {
    for (int r : config.degrees)
      for (double k : config.steps) plan.push_back({r, k});
  } else if (config.mode == "p_version") {
    for (double k : config.steps)
      for (int r : config.degrees) plan.push_back({r, k});
  } else {
    plan.push_back({config.degrees.front(), config.steps.front()});
  }

  for (const auto& [r, k] : plan) {
    EnergySeries* energy_ptr = nullptr;
    if (config.mode == "energy_trace") {
      energy_ptr = &report.energy;
      report.has_energy = true;
    }
    CellResult cell;
    try {
      cell = run_cell(config, prep, r, k, energy_ptr);
    } catch (const ConfigError&) {
      throw;  // malformed sweep parameters abort the whole run
    } catch (const std::exception& e) {
      cell.r = r;
      cell.k = k;
      cell.ok = false;
      cell.error = e.what();
      cell.l2 = cell.h1 = cell.h2 = cell.linf = cell.dlinf = kNaN;
      cell.nodal_val = cell.nodal_deriv = kNaN;
      cell.l2_eoc = cell.h1_eoc = cell.h2_eoc = cell.linf_eoc = kNaN;
      cell.nodal_val_eoc = cell.nodal_deriv_eoc = kNaN;
      report.any_failed = true;
    }
    report.cells.push_back(std::move(cell));
  }

  if (config.mode == "h_version") fill_eoc(report.cells);
  return report;
}

std::string csv_string(const RunReport& report) {
  std::ostringstream out;
  out << "r,k,l2,l2_eoc,h1,h1_eoc,h2,h2_eoc,linf,linf_eoc,nodal_val,"
         "nodal_val_eoc,nodal_deriv,nodal_deriv_eoc,iters_max,wall_ms\n";
  for (const auto& c : report.cells) {
    out << c.r << ',' << format_g17(c.k) << ',' << cell_field(c.l2) << ','
        << cell_field(c.l2_eoc) << ',' << cell_field(c.h1) << ','
        << cell_field(c.h1_eoc) << ',' << cell_field(c.h2) << ','
        << cell_field(c.h2_eoc) << ',' << cell_field(c.linf) << ','
        << cell_field(c.linf_eoc) << ',' << cell_field(c.nodal_val) << ','
        << cell_field(c.nodal_val_eoc) << ',' << cell_field(c.nodal_deriv)
        << ',' << cell_field(c.nodal_deriv_eoc) << ',' << c.iters_max << ','
        << format_g17(c.wall_ms) << '\n';
  }
  return out.str();
}

std::string energy_csv_string(const EnergySeries& series) {
  std::ostringstream out;
  out << "t,H,E\n";
  for (size_t i = 0; i < series.times.size(); ++i)
    out << format_g17(series.times[i]) << ',' << format_g17(series.energies[i])
        << ',' << format_g17(series.errors[i]) << '\n';
  return out.str();
}

void write_report_files(const RunReport& report) {
  namespace fs = std::filesystem;
  fs::create_directories(report.config.out_dir);
  const fs::path dir(report.config.out_dir);

  {
    std::ofstream csv(dir / "report.csv", std::ios::binary);
    csv << csv_string(report);
  }
  if (report.has_energy) {
    std::ofstream csv(dir / "energy.csv", std::ios::binary);
    csv << energy_csv_string(report.energy);
  }

  nlohmann::json j;
  j["config"] = {{"example", report.config.example},
                 {"mode", report.config.mode},
                 {"degrees", report.config.degrees},
                 {"steps", report.config.steps},
                 {"T", report.config.T},
                 {"tol", report.config.tol},
                 {"max_iters", report.config.max_iters},
                 {"quad_points", report.config.quad_points},
                 {"space_degree", report.config.space_degree},
                 {"space_quad", report.config.space_quad},
                 {"timing", report.config.timing},
                 {"out_dir", report.config.out_dir}};
  j["any_failed"] = report.any_failed;
  j["notes"] = report.notes;
  auto num_or_null = [](double v) {
    return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
  };
  j["cells"] = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json jc;
    jc["r"] = c.r;
    jc["k"] = c.k;
    jc["intervals"] = c.intervals;
    jc["ok"] = c.ok;
    if (!c.error.empty()) jc["error"] = c.error;
    jc["l2"] = num_or_null(c.l2);
    jc["l2_eoc"] = num_or_null(c.l2_eoc);
    jc["h1"] = num_or_null(c.h1);
    jc["h1_eoc"] = num_or_null(c.h1_eoc);
    jc["h2"] = num_or_null(c.h2);
    jc["h2_eoc"] = num_or_null(c.h2_eoc);
    jc["linf"] = num_or_null(c.linf);
    jc["linf_eoc"] = num_or_null(c.linf_eoc);
    jc["dlinf"] = num_or_null(c.dlinf);
    jc["nodal_val"] = num_or_null(c.nodal_val);
    jc["nodal_val_eoc"] = num_or_null(c.nodal_val_eoc);
    jc["nodal_deriv"] = num_or_null(c.nodal_deriv);
    jc["nodal_deriv_eoc"] = num_or_null(c.nodal_deriv_eoc);
    jc["iters_max"] = c.iters_max;
    jc["final_update_max"] = c.final_update_max;
    jc["wall_ms"] = c.wall_ms;
    jc["dof_total"] = c.dof_total;
    jc["dof_free"] = c.dof_free;
    jc["contraction_all_ok"] = c.contraction_all_ok;
    j["cells"].push_back(std::move(jc));
  }
  if (report.has_energy) {
    j["energy"] = {{"max_error", report.energy.max_error()},
                   {"initial", report.energy.energies.empty()
                                   ? nlohmann::json()
                                   : nlohmann::json(report.energy.energies[0])}};
  }

  std::ofstream js(dir / "report.json", std::ios::binary);
  js << j.dump(2) << '\n';
}

int run_and_write(const ExperimentConfig& config,
                  const ProblemDef* custom_problem) {
  RunReport report = run(config, custom_problem);
  write_report_files(report);
  return report.any_failed ? 1 : 0;
}

}  // namespace c1cpg
