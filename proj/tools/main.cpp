#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "c1cpg/experiment.hpp"

namespace {

std::vector<int> parse_degree_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw c1cpg::ConfigError("cannot parse degree: " + item);
    }
  }
  return out;
}

std::vector<double> parse_step_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto slash = item.find('/');
    try {
      if (slash == std::string::npos) {
        out.push_back(std::stod(item));
      } else {
        const double den = std::stod(item.substr(slash + 1));
        if (den == 0.0) throw c1cpg::ConfigError("zero denominator: " + item);
        out.push_back(std::stod(item.substr(0, slash)) / den);
      }
    } catch (const c1cpg::ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw c1cpg::ConfigError("cannot parse step: " + item);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C1-continuous Petrov-Galerkin time-stepping experiments"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list-examples", "print the built-in problems");

  auto* run_cmd = app.add_subcommand("run", "run a configured experiment sweep");
  std::string config_path, example, mode, degrees, steps, out_dir;
  double tol = 0.0;
  int quad_points = 0;
  run_cmd->add_option("--config", config_path, "experiment config (JSON)");
  run_cmd->add_option("--example", example, "override the example id");
  run_cmd->add_option("--mode", mode, "override the sweep mode");
  run_cmd->add_option("--degrees", degrees, "override degree list, e.g. 3,4,5");
  run_cmd->add_option("--steps", steps, "override step list, e.g. 1/32,1/64");
  run_cmd->add_option("--out", out_dir, "override the output directory");
  run_cmd->add_option("--tol", tol, "override the fixed-point tolerance");
  run_cmd->add_option("--quad-points", quad_points, "override quadrature points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list_cmd->parsed()) {
    for (const auto& ex : c1cpg::registry())
      std::printf("%-12s %s\n", ex.id.c_str(), ex.summary.c_str());
    return 0;
  }

  try {
    c1cpg::ExperimentConfig config;
    if (!config_path.empty()) config = c1cpg::load_config(config_path);
    if (!example.empty()) config.example = example;
    if (!mode.empty()) config.mode = mode;
    if (!degrees.empty()) config.degrees = parse_degree_list(degrees);
    if (!steps.empty()) config.steps = parse_step_list(steps);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (tol > 0.0) config.tol = tol;
    if (quad_points > 0) config.quad_points = quad_points;
    if (config_path.empty() && config.degrees.empty())
      throw c1cpg::ConfigError("no config given; need at least --degrees and --steps");
    if (config.example == "custom")
      throw c1cpg::ConfigError("example 'custom' is only available through the library API");

    c1cpg::RunReport report = c1cpg::run(config);
    c1cpg::write_report_files(report);

    int bad_contraction = 0;
    for (const auto& c : report.cells)
      if (c.ok && !c.contraction_all_ok) ++bad_contraction;
    if (bad_contraction > 0)
      std::fprintf(stderr,
                   "warning: step-size contraction condition not met in %d "
                   "cell(s); proceeding (the bound is sufficient, not "
                   "necessary)\n",
                   bad_contraction);
    for (const auto& c : report.cells)
      if (!c.ok)
        std::fprintf(stderr, "cell r=%d k=%.17g failed: %s\n", c.r, c.k,
                     c.error.c_str());
    std::printf("wrote %s/report.csv (%zu cells)\n", config.out_dir.c_str(),
                report.cells.size());
    return report.any_failed ? 1 : 0;
  } catch (const c1cpg::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
