#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "c1cpg/cpg.hpp"

namespace c1cpg {

// Tensor-product spectral space on an interval or rectangle with homogeneous
// Dirichlet data. Interior modes per direction are the Lobatto-shape
// combinations phi_k = L_{k-1} - L_{k+1}, k = 1..degree-1, mapped to the
// physical extent; they vanish at the boundary, make the constant-coefficient
// stiffness diagonal and keep the mass matrix banded (|k-j| in {0,2}).
struct SpectralSpace {
  std::vector<std::pair<double, double>> extents;  // one per direction
  std::vector<int> degrees;                        // one per direction, >= 2
  std::vector<Eigen::MatrixXd> mass1d;             // physical scaling included
  std::vector<Eigen::MatrixXd> stiff1d;            // diagonal, physical scaling

  int dims() const { return static_cast<int>(extents.size()); }
  int modes_in(int d) const { return degrees[d] - 1; }
  int modes() const;

  // Values (or x-derivatives) of the interior modes of direction d at
  // physical coordinate x.
  Eigen::VectorXd dir_basis(int d, double x, int deriv = 0) const;
};

SpectralSpace build_space(const std::vector<std::pair<double, double>>& domain,
                          const std::vector<int>& degrees);

// u_tt - b Laplace(u) = f(x, t, u) with homogeneous Dirichlet data.
// lipschitz_u bounds |df/du| and feeds the reduced system's estimate.
struct WavePde {
  double b = 1.0;
  std::function<double(const Eigen::VectorXd&, double, double)> f;
  std::function<double(const Eigen::VectorXd&)> u0;
  std::function<double(const Eigen::VectorXd&)> u1;
  double lipschitz_u = 1.0;
};

struct QuadConfig {
  int points_per_dir = 0;  // 0 selects degree + 4 per direction
};

// Galerkin coefficient system B alpha'' + D alpha = F(t, alpha) with the mass
// factorization, projected initial data and the tensor quadrature machinery
// needed to apply F and reconstruct fields.
struct SemiDiscreteSystem {
  SpectralSpace space;
  Eigen::MatrixXd B;  // mass, symmetric positive definite
  Eigen::MatrixXd D;  // stiffness, symmetric positive semidefinite
  Eigen::LLT<Eigen::MatrixXd> Bllt;
  Eigen::VectorXd alpha0, alpha1;
  Eigen::MatrixXd qpoints;   // dims x nq, tensor Gauss grid (physical)
  Eigen::VectorXd qweights;  // physical weights
  Eigen::MatrixXd PhiQ;      // nq x modes, basis values on the grid
  std::function<double(const Eigen::VectorXd&, double, double)> f;
  double lambda_max = 0.0;  // largest generalized eigenvalue of (D, B)

  // Load vector F(t, alpha)_j = integral of f(x, t, u_h(x)) phi_j(x).
  Eigen::VectorXd force(double t, const Eigen::VectorXd& alpha) const;
};

struct SemiDiscretized {
  std::shared_ptr<SemiDiscreteSystem> system;
  ProblemDef problem;  // rhs applies B^{-1}(F(t,alpha) - D alpha)
};

SemiDiscretized semi_discretize(const WavePde& pde, const SpectralSpace& space,
                                QuadConfig quad = {});

// Space-time field u(x,t) = sum_j phi_j(x) alpha_j(t) over a CPG coefficient
// trajectory.
struct FieldSolution {
  CpgSolution time;
  std::shared_ptr<const SemiDiscreteSystem> system;
};

// Point evaluation (t_deriv in {0,1}); out-of-domain points raise DomainError.
double reconstruct(const FieldSolution& field, const Eigen::VectorXd& x,
                   double t, int t_deriv = 0);

// Space-time error norms: spatial L2 by the system's tensor Gauss grid,
// composed in time cumulatively (H1L2 adds d/dt, H2L2 adds d2/dt2); LinfL2
// samples the nodes plus 10 interior times per interval.
enum class PdeNormKind { L2L2, H1L2, H2L2, LinfL2 };

using ExactFieldFn = std::function<double(const Eigen::VectorXd&, double, int)>;

double pde_norm_error(const FieldSolution& field, const ExactFieldFn& exact,
                      PdeNormKind kind);

// (max_n ||e(., t_n)||_L2, max_n ||e_t(., t_n)||_L2) over nodes n = 1..N.
std::pair<double, double> pde_nodal_errors(const FieldSolution& field,
                                           const ExactFieldFn& exact);

}  // namespace c1cpg
