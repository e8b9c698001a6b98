#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>

#include "c1cpg/cpg.hpp"

namespace c1cpg {

// Callable u(x, deriv) with derivatives up to order 2 at quadrature points.
using SmoothFn = std::function<double(double, int)>;

// Legendre coefficients (4 entries) of the cubic matching the endpoint
// values and slopes on (-1,1).
Eigen::Vector4d hermite_cubic(double u_left, double u_right, double du_left,
                              double du_right);

// Degree-r projection on (-1,1): matches u's value and slope at -1 and makes
// (u - Pu)'' orthogonal to polynomials of degree r-2. r = 2 uses the closed
// form, r = 3 is the Hermite cubic, larger r adds generalized Jacobi tail
// terms with coefficients read off u'' by quadrature (max(2r, 32) points).
Eigen::VectorXd project_c1(const SmoothFn& u, int r);

// Pullback to (-1,1), project, push forward; reproduces endpoint values and
// slopes at both ends for r >= 3.
LocalSolution project_c1_scaled(const SmoothFn& u,
                                std::pair<double, double> interval, int r);

// Legendre coefficients (d+1 entries, pulled-back basis) of the best L2
// approximation of v on the interval.
Eigen::VectorXd l2_project(const std::function<double(double)>& v,
                           std::pair<double, double> interval, int d);

}  // namespace c1cpg
