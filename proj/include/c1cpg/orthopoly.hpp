#pragma once

#include <Eigen/Dense>
#include <utility>

#include "c1cpg/errors.hpp"

namespace c1cpg {

// Gauss-Legendre rule on (-1,1): strictly increasing nodes, positive weights
// summing to 2, exact for polynomials of degree <= 2n-1.
struct QuadRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

// Samples of the shifted Legendre basis phi_l, l = 1..degree+1, on an
// interval (a,b): row l-1 holds L_{l-1}((2t - a - b)/(b - a)) at the sample
// points. d1/d2 are the first/second t-derivatives (chain factor included)
// and stay empty unless requested.
struct BasisSample {
  Eigen::MatrixXd values;
  Eigen::MatrixXd d1;
  Eigen::MatrixXd d2;
};

enum class JacobiFamily { MinusOneMinusOne, MinusTwoMinusTwo };

// L_n^{(k)}(x) by the three-term recurrence and its differentiated forms.
double legendre_eval(int n, double x, int k = 0);

// Generalized Jacobi polynomials with parameter pairs (-1,-1) or (-2,-2):
// J_n^{-1,-1} = (1-x^2) J_{n-2}^{1,1},  J_n^{-2,-2} = (1-x^2)^2 J_{n-4}^{2,2}.
// Degrees below the family minimum (2 resp. 4) raise InvalidDegreeError.
double jacobi_gen_eval(JacobiFamily family, int n, double x, int k = 0);

// Classical Jacobi P_n^{(a,b)} for integer a,b >= 0; derivatives up to k = 2.
// Exposed because tests and the projection module build on it.
double jacobi_classical_eval(int a, int b, int n, double x, int k = 0);

// Newton-refined nodes (cap 100 iterations), cached per n.
QuadRule gauss_legendre_rule(int n);

// Basis values (and derivatives up to `deriv`) at the given points, which
// must lie inside [a,b]; outside points raise DomainError.
BasisSample shifted_basis_sample(std::pair<double, double> interval, int degree,
                                 const Eigen::VectorXd& points, int deriv = 0);

}  // namespace c1cpg
