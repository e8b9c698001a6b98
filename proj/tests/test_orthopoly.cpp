#include <doctest.h>

#include <cmath>

#include "c1cpg/orthopoly.hpp"

using namespace c1cpg;

namespace {

double quad_integrate(const QuadRule& rule, const std::function<double(double)>& f) {
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i) s += rule.weights(i) * f(rule.nodes(i));
  return s;
}

// Normalization constant of the classical Jacobi orthogonality relation for
// integer parameters, via log-gamma.
double jacobi_norm(int a, int b, int n) {
  const double num = (a + b + 1.0) * std::log(2.0) + std::lgamma(n + a + 1.0) +
                     std::lgamma(n + b + 1.0);
  const double den = std::log(2.0 * n + a + b + 1.0) + std::lgamma(n + 1.0) +
                     std::lgamma(n + a + b + 1.0);
  return std::exp(num - den);
}

}  // namespace

TEST_CASE("Legendre point values and derivatives") {
  CHECK(legendre_eval(2, 0.0) == doctest::Approx(-0.5).epsilon(1e-15));
  for (int l = 0; l <= 8; ++l)
    CHECK(legendre_eval(l, -1.0) == doctest::Approx(l % 2 == 0 ? 1.0 : -1.0));
  CHECK(legendre_eval(3, -1.0, 1) == doctest::Approx(6.0));
  // L_l'(-1) = (-1)^{l-1} l (l+1) / 2
  for (int l = 1; l <= 7; ++l) {
    const double expected = (l % 2 == 1 ? 1.0 : -1.0) * l * (l + 1) / 2.0;
    CHECK(legendre_eval(l, -1.0, 1) == doctest::Approx(expected));
  }
}

TEST_CASE("Legendre derivatives satisfy the defining ODE") {
  // (1-x^2) L'' - 2x L' + n(n+1) L = 0
  for (int n = 0; n <= 12; ++n)
    for (double x : {-0.9, -0.31, 0.0, 0.44, 0.97}) {
      const double v = legendre_eval(n, x, 0);
      const double d1 = legendre_eval(n, x, 1);
      const double d2 = legendre_eval(n, x, 2);
      CHECK(std::abs((1 - x * x) * d2 - 2 * x * d1 + n * (n + 1.0) * v) < 1e-10);
    }
  CHECK_THROWS_AS(legendre_eval(-1, 0.0), InvalidDegreeError);
}

TEST_CASE("Legendre orthogonality under Gauss quadrature") {
  for (int n = 0; n <= 12; ++n)
    for (int m = 0; m <= 12; ++m) {
      const QuadRule& rule = gauss_legendre_rule((n + m) / 2 + 1);
      const double val = quad_integrate(
          rule, [&](double x) { return legendre_eval(n, x) * legendre_eval(m, x); });
      const double expected = n == m ? 2.0 / (2.0 * n + 1.0) : 0.0;
      CHECK(std::abs(val - expected) < 1e-12);
    }
}

TEST_CASE("generalized Jacobi values, derivatives and errors") {
  for (int n = 4; n <= 8; ++n) {
    CHECK(std::abs(jacobi_gen_eval(JacobiFamily::MinusTwoMinusTwo, n, 1.0)) < 1e-14);
    CHECK(std::abs(jacobi_gen_eval(JacobiFamily::MinusTwoMinusTwo, n, -1.0)) < 1e-14);
    CHECK(std::abs(jacobi_gen_eval(JacobiFamily::MinusTwoMinusTwo, n, 1.0, 1)) < 1e-14);
    CHECK(std::abs(jacobi_gen_eval(JacobiFamily::MinusTwoMinusTwo, n, -1.0, 1)) < 1e-14);
  }
  // Second derivative identity: d2 J_n^{-2,-2} = 4 (n-2)(n-3) L_{n-2}.
  for (int n = 4; n <= 10; ++n)
    for (double x : {-0.83, -0.2, 0.11, 0.56, 0.99}) {
      const double lhs = jacobi_gen_eval(JacobiFamily::MinusTwoMinusTwo, n, x, 2);
      const double rhs = 4.0 * (n - 2.0) * (n - 3.0) * legendre_eval(n - 2, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  // J_2^{-1,-1}(x) = 1 - x^2.
  CHECK(jacobi_gen_eval(JacobiFamily::MinusOneMinusOne, 2, 0.0) == doctest::Approx(1.0));
  CHECK(jacobi_gen_eval(JacobiFamily::MinusOneMinusOne, 2, 0.5) == doctest::Approx(0.75));
  CHECK_THROWS_AS(jacobi_gen_eval(JacobiFamily::MinusOneMinusOne, 1, 0.0),
                  InvalidDegreeError);
  CHECK_THROWS_AS(jacobi_gen_eval(JacobiFamily::MinusTwoMinusTwo, 3, 0.0),
                  InvalidDegreeError);
}

TEST_CASE("weighted orthogonality of the (-2,-2) family") {
  // Integrand (1-x^2)^{-2} J_n J_m written as (1-x^2)^2 J^{2,2} J^{2,2}.
  const QuadRule& rule = gauss_legendre_rule(40);
  for (int n = 4; n <= 12; ++n)
    for (int m = 4; m <= 12; ++m) {
      const double val = quad_integrate(rule, [&](double x) {
        const double w = (1 - x * x) * (1 - x * x);
        return w * jacobi_classical_eval(2, 2, n - 4, x) *
               jacobi_classical_eval(2, 2, m - 4, x);
      });
      const double expected = n == m ? jacobi_norm(2, 2, n - 4) : 0.0;
      CHECK(std::abs(val - expected) < 1e-10);
    }
}

TEST_CASE("(-2,-2) family equals the double antiderivative closed form") {
  // J_n^{-2,-2} = c [ (L_{m+2} - L_m)/(2m+3) - (L_m - L_{m-2})/(2m-1) ] with
  // m = n-2 and c = 4(n-2)(n-3)/(2m+1), which is the twice-antidifferentiated
  // 4(n-2)(n-3) L_{n-2} vanishing at -1 together with its slope.
  for (int n = 4; n <= 10; ++n) {
    const int m = n - 2;
    const double c = 4.0 * (n - 2.0) * (n - 3.0) / (2.0 * m + 1.0);
    for (int j = 0; j < 20; ++j) {
      const double x = -1.0 + 2.0 * (j + 0.5) / 20.0;
      const double combo =
          c * ((legendre_eval(m + 2, x) - legendre_eval(m, x)) / (2.0 * m + 3.0) -
               (legendre_eval(m, x) - legendre_eval(m - 2, x)) / (2.0 * m - 1.0));
      const double direct = jacobi_gen_eval(JacobiFamily::MinusTwoMinusTwo, n, x);
      CHECK(std::abs(combo - direct) < 1e-11);
    }
  }
}

TEST_CASE("Gauss-Legendre rules: closed forms and exactness") {
  const QuadRule& r1 = gauss_legendre_rule(1);
  CHECK(r1.nodes(0) == doctest::Approx(0.0));
  CHECK(r1.weights(0) == doctest::Approx(2.0));

  const QuadRule& r2 = gauss_legendre_rule(2);
  CHECK(r2.nodes(0) == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(r2.nodes(1) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(r2.weights(0) == doctest::Approx(1.0));
  CHECK(r2.weights(1) == doctest::Approx(1.0));

  const QuadRule& r3 = gauss_legendre_rule(3);
  CHECK(r3.nodes(0) == doctest::Approx(-std::sqrt(0.6)));
  CHECK(r3.nodes(1) == doctest::Approx(0.0));
  CHECK(r3.nodes(2) == doctest::Approx(std::sqrt(0.6)));
  CHECK(r3.weights(0) == doctest::Approx(5.0 / 9.0));
  CHECK(r3.weights(1) == doctest::Approx(8.0 / 9.0));
  CHECK(r3.weights(2) == doctest::Approx(5.0 / 9.0));

  for (int n = 1; n <= 20; ++n) {
    const QuadRule& rule = gauss_legendre_rule(n);
    CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 1; i < n; ++i) CHECK(rule.nodes(i) > rule.nodes(i - 1));
    const double odd = quad_integrate(rule, [&](double x) {
      return std::pow(x, 2 * n - 1);
    });
    const double even = quad_integrate(rule, [&](double x) {
      return std::pow(x, 2 * n - 2);
    });
    CHECK(std::abs(odd) < 1e-12);
    CHECK(std::abs(even - 2.0 / (2.0 * n - 1.0)) < 1e-12);
  }
}

TEST_CASE("shifted basis samples") {
  {
    Eigen::VectorXd pts(1);
    pts << 0.0;
    const BasisSample s = shifted_basis_sample({0.0, 1.0}, 1, pts);
    CHECK(s.values(0, 0) == doctest::Approx(1.0));
    CHECK(s.values(1, 0) == doctest::Approx(-1.0));
  }
  {
    Eigen::VectorXd pts(1);
    pts << 0.0;
    const BasisSample s = shifted_basis_sample({0.0, 2.0}, 3, pts, 1);
    // Row 2 is phi_3 = L_2; L_2'(-1) = -3 and the chain factor is 1.
    CHECK(s.d1(2, 0) == doctest::Approx(-3.0));
  }
  {
    Eigen::VectorXd pts(1);
    pts << 0.65;  // midpoint of (0.3, 1.0)
    const BasisSample s = shifted_basis_sample({0.3, 1.0}, 6, pts);
    for (int l = 0; l <= 6; ++l)
      CHECK(s.values(l, 0) == doctest::Approx(legendre_eval(l, 0.0)).epsilon(1e-14));
  }
  {
    // Chain-rule factors against direct Legendre derivatives.
    Eigen::VectorXd pts(1);
    pts << 0.8;
    const double a = 0.5, b = 1.25, h = b - a;
    const double x = (2 * 0.8 - a - b) / h;
    const BasisSample s = shifted_basis_sample({a, b}, 5, pts, 2);
    for (int l = 0; l <= 5; ++l) {
      CHECK(s.d1(l, 0) ==
            doctest::Approx(legendre_eval(l, x, 1) * 2.0 / h).epsilon(1e-13));
      CHECK(s.d2(l, 0) ==
            doctest::Approx(legendre_eval(l, x, 2) * 4.0 / (h * h)).epsilon(1e-13));
    }
  }
  Eigen::VectorXd outside(1);
  outside << 1.5;
  CHECK_THROWS_AS(shifted_basis_sample({0.0, 1.0}, 2, outside), DomainError);
}
