#include "c1cpg/cpg.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace c1cpg {

namespace {

// Legendre values/derivatives of all basis rows at a single mapped point x,
// scaled back to t-derivatives of order `deriv`.
Eigen::VectorXd basis_column(int degree, double x, int deriv, double scale) {
  Eigen::VectorXd out(degree + 1);
  double p0 = 1.0, p1 = x, q0 = 0.0, q1 = 1.0, r0 = 0.0, r1 = 0.0;
  for (int l = 0; l <= degree; ++l) {
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
    out(l) = deriv == 0 ? v : (deriv == 1 ? d1 * scale : d2 * scale * scale);
  }
  return out;
}

struct QuadSample {
  Eigen::VectorXd times;    // quadrature points mapped into the interval
  Eigen::VectorXd wscaled;  // weights times k/2
  Eigen::MatrixXd val;      // basis values, (r+1) x nq
  Eigen::MatrixXd der;      // basis first derivatives, (r+1) x nq
};

QuadSample sample_interval(std::pair<double, double> interval, int r,
                           const QuadRule& quad) {
  const auto [a, b] = interval;
  const double k = b - a;
  QuadSample s;
  s.times = ((a + b) / 2.0 + (k / 2.0) * quad.nodes.array()).matrix();
  s.wscaled = (k / 2.0) * quad.weights;
  BasisSample bs = shifted_basis_sample(interval, r, s.times, 1);
  s.val = std::move(bs.values);
  s.der = std::move(bs.d1);
  return s;
}

// Moment rows of the right-hand side for the current iterate; the last two
// rows (initial data) are appended by the caller.
Eigen::MatrixXd moment_rows(const ProblemDef& problem, const QuadSample& s,
                            const Eigen::MatrixXd& coef,
                            std::pair<double, double> interval) {
  const int r = static_cast<int>(coef.rows()) - 1;
  const int m = static_cast<int>(coef.cols());
  const int nq = static_cast<int>(s.times.size());

  // Iterate values/slopes at the quadrature points, one column per point.
  Eigen::MatrixXd uq = coef.transpose() * s.val;  // m x nq
  Eigen::MatrixXd vq = coef.transpose() * s.der;  // m x nq

  Eigen::MatrixXd fq(m, nq);
  for (int j = 0; j < nq; ++j) {
    Eigen::VectorXd fj;
    try {
      fj = problem.rhs(s.times(j), uq.col(j), vq.col(j));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "rhs evaluator failed at t = " << s.times(j) << " on interval ("
          << interval.first << ", " << interval.second << "): " << e.what();
      throw StepFailure(msg.str(), -1, 0,
                        std::numeric_limits<double>::quiet_NaN());
    }
    if (fj.size() != m)
      throw StepFailure("rhs evaluator returned wrong dimension", -1, 0,
                        std::numeric_limits<double>::quiet_NaN());
    fq.col(j) = fj;
  }
  return s.val.topRows(r - 1) * s.wscaled.asDiagonal() * fq.transpose();
}

}  // namespace

Eigen::VectorXd LocalSolution::eval(double t, int deriv) const {
  const auto [a, b] = interval;
  const double h = b - a;
  const double slack = 1e-10 * h;
  if (t < a - slack || t > b + slack)
    throw DomainError("LocalSolution::eval: point outside interval");
  const double x = std::clamp((2.0 * t - a - b) / h, -1.0, 1.0);
  return coef.transpose() * basis_column(degree(), x, deriv, 2.0 / h);
}

int CpgSolution::max_iterations() const {
  int m = 0;
  for (const auto& s : stats) m = std::max(m, s.iterations);
  return m;
}

StepMatrix assemble_step_matrix(double k, int r) {
  if (!(k > 0.0))
    throw ValidationError("assemble_step_matrix: step size must be positive");
  if (r < 2) throw InvalidDegreeError("assemble_step_matrix: degree must be >= 2");

  StepMatrix sm;
  sm.A = Eigen::MatrixXd::Zero(r + 1, r + 1);
  // Moment rows: a_{i,j} = (2/k)(i+j-1)(j-i) when j-2 >= i and i+j even.
  for (int i = 1; i <= r - 1; ++i)
    for (int j = i + 2; j <= r + 1; j += 2)
      sm.A(i - 1, j - 1) = (2.0 / k) * (i + j - 1.0) * (j - i);
  // Left-endpoint value row: phi_j(t_{n-1}) = (-1)^{j-1}.
  for (int j = 1; j <= r + 1; ++j) sm.A(r - 1, j - 1) = (j % 2 == 1) ? 1.0 : -1.0;
  // Left-endpoint slope row: phi_j'(t_{n-1}) = (-1)^j (j-1) j / k.
  for (int j = 2; j <= r + 1; ++j)
    sm.A(r, j - 1) = ((j % 2 == 0) ? 1.0 : -1.0) * (j - 1.0) * j / k;

  sm.lu.compute(sm.A);
  if (sm.lu.determinant() == 0.0)
    throw std::runtime_error("assemble_step_matrix: singular system matrix");
  return sm;
}

Eigen::MatrixXd assemble_rhs(const ProblemDef& problem,
                             std::pair<double, double> interval, int r,
                             const LocalSolution& iterate,
                             const Eigen::VectorXd& init_val,
                             const Eigen::VectorXd& init_deriv,
                             const QuadRule& quad) {
  if (r < 2) throw InvalidDegreeError("assemble_rhs: degree must be >= 2");
  if (iterate.degree() != r)
    throw ValidationError("assemble_rhs: iterate degree mismatch");
  QuadSample s = sample_interval(interval, r, quad);
  Eigen::MatrixXd F(r + 1, problem.dim);
  F.topRows(r - 1) = moment_rows(problem, s, iterate.coef, interval);
  F.row(r - 1) = init_val.transpose();
  F.row(r) = init_deriv.transpose();
  return F;
}

LocalSolution solve_step(const ProblemDef& problem,
                         std::pair<double, double> interval, int r,
                         const Eigen::VectorXd& init_val,
                         const Eigen::VectorXd& init_deriv,
                         const SolverOptions& opts, StepStats* stats,
                         const StepMatrix* cached) {
  const auto [a, b] = interval;
  const double k = b - a;
  const int m = problem.dim;
  if (init_val.size() != m || init_deriv.size() != m)
    throw ValidationError("solve_step: initial data dimension mismatch");

  StepMatrix local_sm;
  if (cached == nullptr) {
    local_sm = assemble_step_matrix(k, r);
    cached = &local_sm;
  }
  const QuadRule& quad =
      gauss_legendre_rule(opts.quad_points > 0 ? opts.quad_points : r + 8);
  const QuadSample s = sample_interval(interval, r, quad);

  // Linear Taylor seed u(t) = init_val + (t - a) init_deriv in shifted basis.
  Eigen::MatrixXd coef = Eigen::MatrixXd::Zero(r + 1, m);
  coef.row(0) = (init_val + 0.5 * k * init_deriv).transpose();
  coef.row(1) = (0.5 * k * init_deriv).transpose();

  StepStats local_stats;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  Eigen::MatrixXd F(r + 1, m);
  F.row(r - 1) = init_val.transpose();
  F.row(r) = init_deriv.transpose();

  double prev_delta = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.max_iters; ++it) {
    F.topRows(r - 1) = moment_rows(problem, s, coef, interval);
    Eigen::MatrixXd next = cached->lu.solve(F);
    const double delta = (next - coef).cwiseAbs().maxCoeff();
    const double scale = 1.0 + next.cwiseAbs().maxCoeff();
    coef = std::move(next);
    local_stats.iterations = it;
    local_stats.final_update = delta;
    local_stats.updates.push_back(delta);

    if (delta <= opts.tol * scale) break;
    // Roundoff floor: no more progress and the update is within a few
    // hundred ulps of the iterate. Accept rather than spin to max_iters.
    if (delta >= 0.99 * prev_delta && delta <= 512.0 * eps * scale) break;
    prev_delta = delta;

    if (it == opts.max_iters) {
      std::ostringstream msg;
      msg << "fixed-point iteration did not converge in " << opts.max_iters
          << " iterations on (" << a << ", " << b
          << "); last update " << delta;
      throw StepFailure(msg.str(), -1, it, delta);
    }
  }

  if (stats != nullptr) *stats = std::move(local_stats);
  return LocalSolution{interval, std::move(coef)};
}

CpgSolution solve(const ProblemDef& problem, const TimeMesh& mesh,
                  const SolverOptions& opts) {
  if (problem.dim < 1) throw ValidationError("solve: dimension must be >= 1");
  if (problem.u0.size() != problem.dim || problem.u1.size() != problem.dim)
    throw ValidationError("solve: initial data dimension mismatch");
  if (!problem.rhs) throw ValidationError("solve: missing rhs evaluator");

  CpgSolution sol;
  sol.mesh = mesh;
  sol.contraction_ok = contraction_check(mesh, problem.lipschitz);
  sol.locals.reserve(mesh.intervals());
  sol.stats.reserve(mesh.intervals());

  std::map<std::pair<double, int>, StepMatrix> cache;
  Eigen::VectorXd val = problem.u0;
  Eigen::VectorXd der = problem.u1;

  for (int n = 0; n < mesh.intervals(); ++n) {
    const auto iv = mesh.interval(n);
    const int r = mesh.degrees[n];
    const std::pair<double, int> key{iv.second - iv.first, r};
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, assemble_step_matrix(key.first, r)).first;

    StepStats stats;
    try {
      sol.locals.push_back(
          solve_step(problem, iv, r, val, der, opts, &stats, &it->second));
    } catch (const StepFailure& e) {
      std::ostringstream msg;
      msg << "step " << n + 1 << " of " << mesh.intervals() << " failed: "
          << e.what();
      throw StepFailure(msg.str(), n, e.iterations, e.last_update);
    }
    sol.stats.push_back(std::move(stats));
    val = sol.locals.back().eval(iv.second, 0);
    der = sol.locals.back().eval(iv.second, 1);
  }
  return sol;
}

Eigen::VectorXd eval(const CpgSolution& solution, double t, int deriv) {
  const auto& nodes = solution.mesh.nodes;
  const int N = solution.mesh.intervals();
  if (t < nodes(0) || t > nodes(N))
    throw DomainError("eval: time outside the solution horizon");
  // Interior nodes resolve to the left interval; t_0 belongs to the first.
  int lo = 0, hi = N;  // invariant: nodes(lo) < t or lo == 0, t <= nodes(hi)
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (nodes(mid) < t)
      lo = mid;
    else
      hi = mid;
  }
  return solution.locals[lo].eval(t, deriv);
}

}  // namespace c1cpg
