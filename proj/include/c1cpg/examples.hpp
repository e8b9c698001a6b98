#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "c1cpg/cpg.hpp"
#include "c1cpg/wavepde.hpp"

namespace c1cpg {

// Built-in benchmark problems. ODE entries provide make_problem (with an
// exact solution where one exists); PDE entries provide make_pde plus domain,
// a default spatial degree and the exact field.
struct ExampleDef {
  std::string id;
  std::string summary;
  bool is_pde = false;
  double default_T = 1.0;

  std::function<ProblemDef()> make_problem;

  std::function<WavePde()> make_pde;
  std::vector<std::pair<double, double>> domain;
  int default_space_degree = 0;
  ExactFieldFn exact_field;  // (x, t, t_deriv 0..2)
};

const std::vector<ExampleDef>& registry();

// Throws LookupError for unknown ids.
const ExampleDef& find_example(const std::string& id);

}  // namespace c1cpg
