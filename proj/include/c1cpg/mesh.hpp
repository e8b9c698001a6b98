#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "c1cpg/errors.hpp"

namespace c1cpg {

// Time partition t_0 < t_1 < ... < t_N with one polynomial degree r_n >= 2
// per interval. Immutable after construction; build through the factories
// below so the invariants are checked once.
struct TimeMesh {
  Eigen::VectorXd nodes;      // N+1 entries, strictly increasing
  std::vector<int> degrees;   // N entries, each >= 2

  int intervals() const { return static_cast<int>(degrees.size()); }
  double step(int n) const { return nodes(n + 1) - nodes(n); }
  std::pair<double, double> interval(int n) const {
    return {nodes(n), nodes(n + 1)};
  }
  double horizon() const { return nodes(nodes.size() - 1); }
};

// Uniform partition of (0,T) into N intervals of degree r.
TimeMesh build_uniform(double T, int N, int r);

// Arbitrary partition; throws ValidationError / InvalidDegreeError on
// non-monotone nodes or degrees below 2.
TimeMesh build_from_arrays(const std::vector<double>& nodes,
                           const std::vector<int>& degrees);

// Per-interval sufficient step-size condition (L k_n / 2) sqrt(8 + k_n^2) < 1
// for unique solvability of the nonlinear step. Advisory: callers decide
// whether a false flag is fatal.
std::vector<bool> contraction_check(const TimeMesh& mesh, double lipschitz);

}  // namespace c1cpg
