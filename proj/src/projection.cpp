#include "c1cpg/projection.hpp"

#include <algorithm>
#include <cmath>

#include "c1cpg/orthopoly.hpp"

namespace c1cpg {

Eigen::Vector4d hermite_cubic(double u_left, double u_right, double du_left,
                              double du_right) {
  // Legendre expansions of the four cubic Hermite shape functions.
  static const Eigen::Vector4d h_val_left(0.5, -0.6, 0.0, 0.1);
  static const Eigen::Vector4d h_val_right(0.5, 0.6, 0.0, -0.1);
  static const Eigen::Vector4d h_der_left(1.0 / 6.0, -0.1, -1.0 / 6.0, 0.1);
  static const Eigen::Vector4d h_der_right(-1.0 / 6.0, -0.1, 1.0 / 6.0, 0.1);
  return u_left * h_val_left + u_right * h_val_right + du_left * h_der_left +
         du_right * h_der_right;
}

Eigen::VectorXd project_c1(const SmoothFn& u, int r) {
  if (r < 2) throw InvalidDegreeError("project_c1: degree must be >= 2");
  if (!u) throw CapabilityError("project_c1: missing input callable");

  if (r == 2) {
    // Closed form: value at -1 plus two slope-weighted quadratics.
    static const Eigen::Vector3d c_val(1.0, 0.0, 0.0);
    static const Eigen::Vector3d c_der_left(2.0 / 3.0, 0.5, -1.0 / 6.0);
    static const Eigen::Vector3d c_der_right(1.0 / 3.0, 0.5, 1.0 / 6.0);
    return u(-1.0, 0) * c_val + u(-1.0, 1) * c_der_left +
           u(1.0, 1) * c_der_right;
  }

  Eigen::VectorXd coef = Eigen::VectorXd::Zero(r + 1);
  coef.head<4>() = hermite_cubic(u(-1.0, 0), u(1.0, 0), u(-1.0, 1), u(1.0, 1));
  if (r == 3) return coef;

  // Legendre coefficients of u'' drive the tail terms.
  const QuadRule& quad = gauss_legendre_rule(std::max(2 * r, 32));
  Eigen::VectorXd a = Eigen::VectorXd::Zero(r - 1);  // a_i for i = 0..r-2
  for (int j = 0; j < quad.size(); ++j) {
    const double x = quad.nodes(j);
    const double wu = quad.weights(j) * u(x, 2);
    double p0 = 1.0, p1 = x;
    for (int i = 0; i <= r - 2; ++i) {
      double v;
      if (i == 0)
        v = p0;
      else if (i == 1)
        v = p1;
      else {
        v = ((2.0 * i - 1.0) * x * p1 - (i - 1.0) * p0) / i;
        p0 = p1;
        p1 = v;
      }
      a(i) += 0.5 * (2.0 * i + 1.0) * wu * v;
    }
  }

  for (int i = 4; i <= r; ++i) {
    const double b = a(i - 2) / (4.0 * (i - 2.0) * (i - 3.0));
    // J_i^{-2,-2} written out in Legendre terms: with m = i-2 it is
    // c [ (L_{m+2} - L_m)/(2m+3) - (L_m - L_{m-2})/(2m-1) ],
    // c = 4(i-2)(i-3)/(2m+1).
    const int m = i - 2;
    const double c = 4.0 * (i - 2.0) * (i - 3.0) / (2.0 * m + 1.0);
    coef(m + 2) += b * c / (2.0 * m + 3.0);
    coef(m) -= b * c * (1.0 / (2.0 * m + 3.0) + 1.0 / (2.0 * m - 1.0));
    coef(m - 2) += b * c / (2.0 * m - 1.0);
  }
  return coef;
}

LocalSolution project_c1_scaled(const SmoothFn& u,
                                std::pair<double, double> interval, int r) {
  const auto [a, b] = interval;
  if (!(a < b)) throw ValidationError("project_c1_scaled: need a < b");
  const double half = 0.5 * (b - a);
  auto pullback = [&](double x, int d) {
    const double t = a + (x + 1.0) * half;
    return u(t, d) * std::pow(half, d);
  };
  Eigen::VectorXd coef = project_c1(pullback, r);
  LocalSolution local;
  local.interval = interval;
  local.coef = coef;
  return local;
}

Eigen::VectorXd l2_project(const std::function<double(double)>& v,
                           std::pair<double, double> interval, int d) {
  const auto [a, b] = interval;
  if (!(a < b)) throw ValidationError("l2_project: need a < b");
  if (d < 0) throw InvalidDegreeError("l2_project: degree must be >= 0");
  if (!v) throw CapabilityError("l2_project: missing input callable");

  const QuadRule& quad = gauss_legendre_rule(std::max(d + 8, 16));
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(d + 1);
  const double half = 0.5 * (b - a);
  for (int j = 0; j < quad.size(); ++j) {
    const double x = quad.nodes(j);
    const double wv = quad.weights(j) * v(a + (x + 1.0) * half);
    double p0 = 1.0, p1 = x;
    for (int i = 0; i <= d; ++i) {
      double val;
      if (i == 0)
        val = p0;
      else if (i == 1)
        val = p1;
      else {
        val = ((2.0 * i - 1.0) * x * p1 - (i - 1.0) * p0) / i;
        p0 = p1;
        p1 = val;
      }
      coef(i) += 0.5 * (2.0 * i + 1.0) * wv * val;
    }
  }
  return coef;
}

}  // namespace c1cpg
