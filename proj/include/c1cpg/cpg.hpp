#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "c1cpg/mesh.hpp"
#include "c1cpg/orthopoly.hpp"

namespace c1cpg {

// Second-order IVP u'' = f(t, u, u'), u(0) = u0, u'(0) = u1, in R^M.
// `exact`, when present, maps (t, deriv in 0..2) to the reference solution.
struct ProblemDef {
  int dim = 1;
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&,
                                const Eigen::VectorXd&)>
      rhs;
  Eigen::VectorXd u0;
  Eigen::VectorXd u1;
  double lipschitz = 1.0;
  std::function<Eigen::VectorXd(double, int)> exact;
};

struct SolverOptions {
  double tol = 1e-13;   // relative l-inf change of coefficients
  int max_iters = 200;  // fixed-point iteration cap per step
  int quad_points = 0;  // 0 selects the default r + 8
};

// Per-step system matrix A_n with its LU factorization. Rows 1..r-1 are the
// Legendre moment rows; the last two rows pin value and derivative at the
// left endpoint.
struct StepMatrix {
  Eigen::MatrixXd A;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

// Degree-r polynomial on one interval, stored as shifted-Legendre
// coefficients: column m of `coef` holds component m, row l holds the
// coefficient of L_l((2t - a - b)/(b - a)).
struct LocalSolution {
  std::pair<double, double> interval;
  Eigen::MatrixXd coef;  // (r+1) x M

  int degree() const { return static_cast<int>(coef.rows()) - 1; }
  int dim() const { return static_cast<int>(coef.cols()); }
  Eigen::VectorXd eval(double t, int deriv = 0) const;
};

struct StepStats {
  int iterations = 0;
  double final_update = 0.0;
  std::vector<double> updates;  // coefficient change per iteration
};

// Globally C1 piecewise polynomial: value and slope hand off continuously at
// every interior node (up to solver tolerance).
struct CpgSolution {
  TimeMesh mesh;
  std::vector<LocalSolution> locals;
  std::vector<StepStats> stats;
  std::vector<bool> contraction_ok;  // advisory flags, never enforced

  int max_iterations() const;
};

// A_n entries in closed form; throws InvalidDegreeError for r < 2.
StepMatrix assemble_step_matrix(double k, int r);

// Right-hand side for one fixed-point sweep: rows 1..r-1 are Gauss
// approximations of the f-moments against the iterate, rows r and r+1 carry
// the initial value and slope. rhs-evaluator exceptions surface as
// StepFailure.
Eigen::MatrixXd assemble_rhs(const ProblemDef& problem,
                             std::pair<double, double> interval, int r,
                             const LocalSolution& iterate,
                             const Eigen::VectorXd& init_val,
                             const Eigen::VectorXd& init_deriv,
                             const QuadRule& quad);

// One nonlinear step from the given initial data, seeded with the linear
// Taylor polynomial and iterated until the relative coefficient change drops
// below opts.tol. Throws StepFailure when max_iters is exhausted.
LocalSolution solve_step(const ProblemDef& problem,
                         std::pair<double, double> interval, int r,
                         const Eigen::VectorXd& init_val,
                         const Eigen::VectorXd& init_deriv,
                         const SolverOptions& opts = {},
                         StepStats* stats = nullptr,
                         const StepMatrix* cached = nullptr);

// Sequential march over the mesh; each step consumes the previous endpoint
// value and slope. Step matrices are factorized once per distinct (k, r).
CpgSolution solve(const ProblemDef& problem, const TimeMesh& mesh,
                  const SolverOptions& opts = {});

// Series evaluation at t in [0,T]; interior nodes resolve to the interval on
// their left. Outside the horizon raises DomainError.
Eigen::VectorXd eval(const CpgSolution& solution, double t, int deriv = 0);

}  // namespace c1cpg
