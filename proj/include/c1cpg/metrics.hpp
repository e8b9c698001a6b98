#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "c1cpg/cpg.hpp"

namespace c1cpg {

// H1/H2 follow the cumulative convention: ||e||_{H1}^2 = ||e||^2 + ||e'||^2,
// ||e||_{H2}^2 adds ||e''||^2, so L2 <= H1 <= H2 always.
enum class NormKind { L2, H1, H2, Linf, dLinf };

using ExactFn = std::function<Eigen::VectorXd(double, int)>;

// Integral norms by per-interval Gauss quadrature with r_n + 8 points
// (quad_points overrides when positive); sup norms by 50 Chebyshev sample
// points per interval plus the endpoints. Vector errors are measured in the
// Euclidean norm pointwise. Missing exact evaluator raises CapabilityError.
double norm_error(const CpgSolution& solution, const ExactFn& exact,
                  NormKind kind, int quad_points = 0);

// (max_n |e(t_n)|, max_n |e'(t_n)|) over the interior and final nodes.
std::pair<double, double> nodal_errors(const CpgSolution& solution,
                                       const ExactFn& exact);

// order_i = log(e_{i-1}/e_i) / log(k_{i-1}/k_i); entries that cannot be
// formed (non-positive errors, equal steps) come back as NaN.
std::vector<double> eoc(const std::vector<double>& errors,
                        const std::vector<double>& steps);

// Kepler energy H = (p1^2 + p2^2)/2 - 1/sqrt(q1^2 + q2^2) for the state
// (q1, q2, p1, p2); the origin raises SingularityError.
double hamiltonian_energy(const Eigen::Vector4d& state);

struct EnergySeries {
  std::vector<double> times;
  std::vector<double> energies;  // H at each node
  std::vector<double> errors;    // |H(t_n) - H(t_0)|, first entry exactly 0

  double max_error() const;
};

// Node-wise energy record of a planar two-body solution (dim must be 2;
// velocities come from the first derivative of the solution).
EnergySeries energy_series(const CpgSolution& solution);

}  // namespace c1cpg
