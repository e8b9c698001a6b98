#include "c1cpg/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace c1cpg {

namespace {

// Joint evaluation of L_n, L_n', L_n'' at x. The derivative recurrences are
// the differentiated three-term recurrence, stable for the degrees used here.
void legendre_triplet(int n, double x, double& v, double& d1, double& d2) {
  double p0 = 1.0, p1 = x;
  double q0 = 0.0, q1 = 1.0;
  double r0 = 0.0, r1 = 0.0;
  if (n == 0) {
    v = p0;
    d1 = q0;
    d2 = r0;
    return;
  }
  for (int m = 1; m < n; ++m) {
    const double a = (2.0 * m + 1.0) / (m + 1.0);
    const double b = static_cast<double>(m) / (m + 1.0);
    const double p2 = a * x * p1 - b * p0;
    const double q2 = a * (p1 + x * q1) - b * q0;
    const double r2 = a * (2.0 * q1 + x * r1) - b * r0;
    p0 = p1;
    p1 = p2;
    q0 = q1;
    q1 = q2;
    r0 = r1;
    r1 = r2;
  }
  v = p1;
  d1 = q1;
  d2 = r1;
}

void check_deriv_order(int k) {
  if (k < 0 || k > 2)
    throw std::invalid_argument("derivative order must be 0, 1 or 2");
}

}  // namespace

double legendre_eval(int n, double x, int k) {
  if (n < 0) throw InvalidDegreeError("legendre_eval: degree must be >= 0");
  check_deriv_order(k);
  double v, d1, d2;
  legendre_triplet(n, x, v, d1, d2);
  return k == 0 ? v : (k == 1 ? d1 : d2);
}

double jacobi_classical_eval(int a, int b, int n, double x, int k) {
  if (a < 0 || b < 0)
    throw std::invalid_argument("jacobi_classical_eval: parameters must be >= 0");
  if (n < 0) throw InvalidDegreeError("jacobi_classical_eval: degree must be >= 0");
  check_deriv_order(k);
  // d/dx P_n^{(a,b)} = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)}
  if (k > 0) {
    if (n == 0) return 0.0;
    return 0.5 * (n + a + b + 1) *
           jacobi_classical_eval(a + 1, b + 1, n - 1, x, k - 1);
  }
  double p0 = 1.0;
  if (n == 0) return p0;
  double p1 = 0.5 * ((a + b + 2) * x + a - b);
  for (int m = 2; m <= n; ++m) {
    const double c = 2.0 * m + a + b;
    const double a1 = 2.0 * m * (m + a + b) * (c - 2.0);
    const double a2 = (c - 1.0) * (a * a - b * b);
    const double a3 = (c - 1.0) * c * (c - 2.0);
    const double a4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * c;
    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double jacobi_gen_eval(JacobiFamily family, int n, double x, int k) {
  check_deriv_order(k);
  const double w1 = 1.0 - x * x;
  if (family == JacobiFamily::MinusOneMinusOne) {
    if (n < 2)
      throw InvalidDegreeError("jacobi_gen_eval: family (-1,-1) needs n >= 2");
    const double p = jacobi_classical_eval(1, 1, n - 2, x, 0);
    if (k == 0) return w1 * p;
    const double dp = jacobi_classical_eval(1, 1, n - 2, x, 1);
    if (k == 1) return -2.0 * x * p + w1 * dp;
    const double d2p = jacobi_classical_eval(1, 1, n - 2, x, 2);
    return -2.0 * p - 4.0 * x * dp + w1 * d2p;
  }
  if (n < 4)
    throw InvalidDegreeError("jacobi_gen_eval: family (-2,-2) needs n >= 4");
  const double p = jacobi_classical_eval(2, 2, n - 4, x, 0);
  if (k == 0) return w1 * w1 * p;
  const double dp = jacobi_classical_eval(2, 2, n - 4, x, 1);
  if (k == 1) return -4.0 * x * w1 * p + w1 * w1 * dp;
  const double d2p = jacobi_classical_eval(2, 2, n - 4, x, 2);
  return (12.0 * x * x - 4.0) * p - 8.0 * x * w1 * dp + w1 * w1 * d2p;
}

QuadRule gauss_legendre_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n must be >= 1");

  static std::map<int, QuadRule> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }

  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton on L_n from the Chebyshev-like initial guess; each root refines in
  // a handful of iterations, the 100 cap is purely defensive.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double v = 0.0, d1 = 0.0, d2 = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_triplet(n, x, v, d1, d2);
      const double dx = v / d1;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_triplet(n, x, v, d1, d2);
    const double w = 2.0 / ((1.0 - x * x) * d1 * d1);
    // Initial guesses descend from +1, so index i is the (n-1-i)-th node in
    // ascending order; the mirror image fills the lower half exactly.
    rule.nodes(n - 1 - i) = x;
    rule.weights(n - 1 - i) = w;
    rule.nodes(i) = -x;
    rule.weights(i) = w;
  }
  if (n % 2 == 1) rule.nodes(half - 1) = 0.0;

  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(n, std::move(rule)).first->second;
}

BasisSample shifted_basis_sample(std::pair<double, double> interval, int degree,
                                 const Eigen::VectorXd& points, int deriv) {
  const auto [a, b] = interval;
  if (!(a < b)) throw ValidationError("shifted_basis_sample: need a < b");
  if (degree < 0) throw InvalidDegreeError("shifted_basis_sample: degree < 0");
  check_deriv_order(deriv);

  const double h = b - a;
  const double slack = 1e-10 * h;
  const int rows = degree + 1;
  const int npts = static_cast<int>(points.size());

  BasisSample out;
  out.values.resize(rows, npts);
  if (deriv >= 1) out.d1.resize(rows, npts);
  if (deriv >= 2) out.d2.resize(rows, npts);

  const double scale = 2.0 / h;
  for (int j = 0; j < npts; ++j) {
    const double t = points(j);
    if (t < a - slack || t > b + slack)
      throw DomainError("shifted_basis_sample: point outside interval");
    double x = (2.0 * t - a - b) / h;
    x = std::clamp(x, -1.0, 1.0);

    double p0 = 1.0, p1 = x, q0 = 0.0, q1 = 1.0, r0 = 0.0, r1 = 0.0;
    for (int l = 0; l < rows; ++l) {
      double v, d1, d2;
      if (l == 0) {
        v = p0;
        d1 = q0;
        d2 = r0;
      } else if (l == 1) {
        v = p1;
        d1 = q1;
        d2 = r1;
      } else {
        const double alpha = (2.0 * l - 1.0) / l;
        const double beta = (l - 1.0) / l;
        v = alpha * x * p1 - beta * p0;
        d1 = alpha * (p1 + x * q1) - beta * q0;
        d2 = alpha * (2.0 * q1 + x * r1) - beta * r0;
        p0 = p1;
        p1 = v;
        q0 = q1;
        q1 = d1;
        r0 = r1;
        r1 = d2;
      }
      out.values(l, j) = v;
      if (deriv >= 1) out.d1(l, j) = d1 * scale;
      if (deriv >= 2) out.d2(l, j) = d2 * scale * scale;
    }
  }
  return out;
}

}  // namespace c1cpg
