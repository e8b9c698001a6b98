#include "c1cpg/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace c1cpg {

namespace {

Eigen::VectorXd call_exact(const ExactFn& exact, double t, int deriv) {
  try {
    return exact(t, deriv);
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "exact-solution evaluator cannot supply derivative order " << deriv
        << ": " << e.what();
    throw CapabilityError(msg.str());
  }
}

}  // namespace

double norm_error(const CpgSolution& solution, const ExactFn& exact,
                  NormKind kind, int quad_points) {
  if (!exact) throw CapabilityError("norm_error: missing exact evaluator");

  const bool sup_norm = kind == NormKind::Linf || kind == NormKind::dLinf;
  const int max_deriv = kind == NormKind::L2   ? 0
                        : kind == NormKind::H1 ? 1
                        : kind == NormKind::H2 ? 2
                        : kind == NormKind::Linf ? 0 : 1;

  if (sup_norm) {
    constexpr int cheb = 50;
    double worst = 0.0;
    for (int n = 0; n < solution.mesh.intervals(); ++n) {
      const auto [a, b] = solution.mesh.interval(n);
      const auto& local = solution.locals[n];
      auto probe = [&](double t) {
        const Eigen::VectorXd e =
            local.eval(t, max_deriv) - call_exact(exact, t, max_deriv);
        worst = std::max(worst, e.norm());
      };
      probe(a);
      probe(b);
      for (int j = 0; j < cheb; ++j) {
        const double x = std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * cheb));
        probe(0.5 * (a + b) + 0.5 * (b - a) * x);
      }
    }
    return worst;
  }

  double total = 0.0;
  for (int n = 0; n < solution.mesh.intervals(); ++n) {
    const auto [a, b] = solution.mesh.interval(n);
    const double k = b - a;
    const int nq = quad_points > 0 ? quad_points : solution.mesh.degrees[n] + 8;
    const QuadRule& quad = gauss_legendre_rule(nq);
    const auto& local = solution.locals[n];
    for (int j = 0; j < quad.size(); ++j) {
      const double t = 0.5 * (a + b) + 0.5 * k * quad.nodes(j);
      const double w = 0.5 * k * quad.weights(j);
      for (int d = 0; d <= max_deriv; ++d) {
        const Eigen::VectorXd e = local.eval(t, d) - call_exact(exact, t, d);
        total += w * e.squaredNorm();
      }
    }
  }
  return std::sqrt(total);
}

std::pair<double, double> nodal_errors(const CpgSolution& solution,
                                       const ExactFn& exact) {
  if (!exact) throw CapabilityError("nodal_errors: missing exact evaluator");
  double max_val = 0.0, max_der = 0.0;
  for (int n = 0; n < solution.mesh.intervals(); ++n) {
    const double t = solution.mesh.nodes(n + 1);
    const auto& local = solution.locals[n];
    max_val = std::max(max_val,
                       (local.eval(t, 0) - call_exact(exact, t, 0)).norm());
    max_der = std::max(max_der,
                       (local.eval(t, 1) - call_exact(exact, t, 1)).norm());
  }
  return {max_val, max_der};
}

std::vector<double> eoc(const std::vector<double>& errors,
                        const std::vector<double>& steps) {
  if (errors.size() != steps.size() || errors.size() < 2)
    throw ValidationError("eoc: need equally long lists with >= 2 entries");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> orders(errors.size() - 1, nan);
  for (size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i - 1] > 0.0) || !(errors[i] > 0.0)) continue;
    if (!(steps[i - 1] > 0.0) || !(steps[i] > 0.0) || steps[i - 1] == steps[i])
      continue;
    orders[i - 1] = std::log(errors[i - 1] / errors[i]) /
                    std::log(steps[i - 1] / steps[i]);
  }
  return orders;
}

double hamiltonian_energy(const Eigen::Vector4d& state) {
  const double q2 = state(0) * state(0) + state(1) * state(1);
  if (q2 == 0.0)
    throw SingularityError("hamiltonian_energy: state at the origin");
  return 0.5 * (state(2) * state(2) + state(3) * state(3)) - 1.0 / std::sqrt(q2);
}

double EnergySeries::max_error() const {
  double m = 0.0;
  for (double e : errors) m = std::max(m, e);
  return m;
}

EnergySeries energy_series(const CpgSolution& solution) {
  if (solution.locals.empty() || solution.locals.front().dim() != 2)
    throw ValidationError("energy_series: needs a planar (dim 2) solution");

  EnergySeries series;
  const int N = solution.mesh.intervals();
  series.times.reserve(N + 1);
  series.energies.reserve(N + 1);
  series.errors.reserve(N + 1);
  for (int n = 0; n <= N; ++n) {
    const double t = solution.mesh.nodes(n);
    const Eigen::VectorXd q = eval(solution, t, 0);
    const Eigen::VectorXd p = eval(solution, t, 1);
    const double H = hamiltonian_energy({q(0), q(1), p(0), p(1)});
    series.times.push_back(t);
    series.energies.push_back(H);
    series.errors.push_back(n == 0 ? 0.0 : std::abs(H - series.energies[0]));
  }
  return series;
}

}  // namespace c1cpg
