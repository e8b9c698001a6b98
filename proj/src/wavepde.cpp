#include "c1cpg/wavepde.hpp"

#include <algorithm>
#include <cmath>

#include "c1cpg/orthopoly.hpp"

namespace c1cpg {

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

}  // namespace

int SpectralSpace::modes() const {
  int m = 1;
  for (int d = 0; d < dims(); ++d) m *= modes_in(d);
  return m;
}

Eigen::VectorXd SpectralSpace::dir_basis(int d, double x, int deriv) const {
  const auto [a, b] = extents[d];
  if (x < a - 1e-12 * (b - a) || x > b + 1e-12 * (b - a))
    throw DomainError("SpectralSpace::dir_basis: point outside extent");
  const double xi = std::clamp((2.0 * x - a - b) / (b - a), -1.0, 1.0);
  const double scale = std::pow(2.0 / (b - a), deriv);
  const int m = modes_in(d);
  Eigen::VectorXd out(m);
  for (int k = 1; k <= m; ++k)
    out(k - 1) = scale * (legendre_eval(k - 1, xi, deriv) -
                          legendre_eval(k + 1, xi, deriv));
  return out;
}

SpectralSpace build_space(const std::vector<std::pair<double, double>>& domain,
                          const std::vector<int>& degrees) {
  if (domain.empty() || domain.size() > 2)
    throw ValidationError("build_space: domain must be 1D or 2D");
  if (degrees.size() != domain.size())
    throw ValidationError("build_space: one degree per direction required");
  for (const auto& [a, b] : domain)
    if (!(a < b)) throw ValidationError("build_space: degenerate domain extent");
  for (int deg : degrees)
    if (deg < 2) throw InvalidDegreeError("build_space: degrees must be >= 2");

  SpectralSpace space;
  space.extents = domain;
  space.degrees = degrees;
  for (size_t d = 0; d < domain.size(); ++d) {
    const double h = domain[d].second - domain[d].first;
    const int m = degrees[d] - 1;
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd stiff = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k <= m; ++k) {
      // (phi_k, phi_k) = 2/(2k-1) + 2/(2k+3) on (-1,1); phi_k' = -(2k+1) L_k
      // gives the diagonal stiffness 2(2k+1).
      mass(k - 1, k - 1) = (h / 2.0) * (2.0 / (2.0 * k - 1.0) + 2.0 / (2.0 * k + 3.0));
      if (k + 2 <= m) {
        mass(k - 1, k + 1) = -(h / 2.0) * 2.0 / (2.0 * k + 3.0);
        mass(k + 1, k - 1) = mass(k - 1, k + 1);
      }
      stiff(k - 1, k - 1) = (2.0 / h) * 2.0 * (2.0 * k + 1.0);
    }
    space.mass1d.push_back(std::move(mass));
    space.stiff1d.push_back(std::move(stiff));
  }
  return space;
}

Eigen::VectorXd SemiDiscreteSystem::force(double t,
                                          const Eigen::VectorXd& alpha) const {
  Eigen::VectorXd uq = PhiQ * alpha;
  for (Eigen::Index q = 0; q < uq.size(); ++q)
    uq(q) = qweights(q) * f(qpoints.col(q), t, uq(q));
  return PhiQ.transpose() * uq;
}

SemiDiscretized semi_discretize(const WavePde& pde, const SpectralSpace& space,
                                QuadConfig quad) {
  if (!pde.f || !pde.u0 || !pde.u1)
    throw ValidationError("semi_discretize: pde callables missing");
  const int dims = space.dims();
  int max_degree = 0;
  for (int d = 0; d < dims; ++d) max_degree = std::max(max_degree, space.degrees[d]);
  if (quad.points_per_dir != 0 && quad.points_per_dir < max_degree + 1)
    throw ValidationError(
        "semi_discretize: quadrature needs at least degree+1 points per direction");

  auto sys = std::make_shared<SemiDiscreteSystem>();
  sys->space = space;
  sys->f = pde.f;

  if (dims == 1) {
    sys->B = space.mass1d[0];
    sys->D = pde.b * space.stiff1d[0];
  } else {
    sys->B = kron(space.mass1d[0], space.mass1d[1]);
    sys->D = pde.b * (kron(space.stiff1d[0], space.mass1d[1]) +
                      kron(space.mass1d[0], space.stiff1d[1]));
  }
  sys->Bllt.compute(sys->B);
  if (sys->Bllt.info() != Eigen::Success)
    throw std::runtime_error("semi_discretize: mass matrix not SPD");

  // Tensor Gauss grid and basis table. Mode and point orderings follow the
  // same Kronecker convention (first direction outermost).
  std::vector<Eigen::VectorXd> pts(dims), wts(dims);
  std::vector<Eigen::MatrixXd> V(dims);
  int nq_total = 1;
  for (int d = 0; d < dims; ++d) {
    const int nq = quad.points_per_dir != 0 ? quad.points_per_dir
                                            : space.degrees[d] + 4;
    const QuadRule& rule = gauss_legendre_rule(nq);
    const auto [a, b] = space.extents[d];
    pts[d] = (0.5 * (a + b) + 0.5 * (b - a) * rule.nodes.array()).matrix();
    wts[d] = 0.5 * (b - a) * rule.weights;
    V[d].resize(nq, space.modes_in(d));
    for (int q = 0; q < nq; ++q)
      V[d].row(q) = space.dir_basis(d, pts[d](q)).transpose();
    nq_total *= nq;
  }

  sys->qpoints.resize(dims, nq_total);
  sys->qweights.resize(nq_total);
  if (dims == 1) {
    sys->qpoints.row(0) = pts[0].transpose();
    sys->qweights = wts[0];
    sys->PhiQ = V[0];
  } else {
    const int nqx = static_cast<int>(pts[0].size());
    const int nqy = static_cast<int>(pts[1].size());
    for (int qx = 0; qx < nqx; ++qx)
      for (int qy = 0; qy < nqy; ++qy) {
        const int q = qx * nqy + qy;
        sys->qpoints(0, q) = pts[0](qx);
        sys->qpoints(1, q) = pts[1](qy);
        sys->qweights(q) = wts[0](qx) * wts[1](qy);
      }
    sys->PhiQ = kron(V[0], V[1]);
  }

  // Initial coefficients by L2-projection.
  Eigen::VectorXd m0(nq_total), m1(nq_total);
  for (int q = 0; q < nq_total; ++q) {
    m0(q) = sys->qweights(q) * pde.u0(sys->qpoints.col(q));
    m1(q) = sys->qweights(q) * pde.u1(sys->qpoints.col(q));
  }
  sys->alpha0 = sys->Bllt.solve(sys->PhiQ.transpose() * m0);
  sys->alpha1 = sys->Bllt.solve(sys->PhiQ.transpose() * m1);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(sys->D, sys->B,
                                                                Eigen::EigenvaluesOnly);
  sys->lambda_max = ges.eigenvalues().maxCoeff();

  ProblemDef problem;
  problem.dim = space.modes();
  problem.u0 = sys->alpha0;
  problem.u1 = sys->alpha1;
  problem.lipschitz = sys->lambda_max + pde.lipschitz_u;
  problem.rhs = [sys](double t, const Eigen::VectorXd& a,
                      const Eigen::VectorXd&) -> Eigen::VectorXd {
    return sys->Bllt.solve(sys->force(t, a) - sys->D * a);
  };
  return SemiDiscretized{sys, std::move(problem)};
}

double reconstruct(const FieldSolution& field, const Eigen::VectorXd& x,
                   double t, int t_deriv) {
  if (t_deriv < 0 || t_deriv > 1)
    throw std::invalid_argument("reconstruct: t_deriv must be 0 or 1");
  const auto& space = field.system->space;
  if (x.size() != space.dims())
    throw DomainError("reconstruct: point dimension mismatch");
  const Eigen::VectorXd alpha = eval(field.time, t, t_deriv);
  Eigen::VectorXd phi = space.dir_basis(0, x(0));
  if (space.dims() == 2) {
    const Eigen::VectorXd phiy = space.dir_basis(1, x(1));
    Eigen::VectorXd tensor(phi.size() * phiy.size());
    for (Eigen::Index i = 0; i < phi.size(); ++i)
      tensor.segment(i * phiy.size(), phiy.size()) = phi(i) * phiy;
    phi = std::move(tensor);
  }
  return phi.dot(alpha);
}

namespace {

// Spatial L2 error of the d-th time derivative at time t, via the system's
// tensor quadrature grid.
double spatial_l2_error(const FieldSolution& field, const ExactFieldFn& exact,
                        double t, int t_deriv) {
  const auto& sys = *field.system;
  const Eigen::VectorXd alpha = eval(field.time, t, t_deriv);
  const Eigen::VectorXd uq = sys.PhiQ * alpha;
  double total = 0.0;
  for (Eigen::Index q = 0; q < uq.size(); ++q) {
    const double e = uq(q) - exact(sys.qpoints.col(q), t, t_deriv);
    total += sys.qweights(q) * e * e;
  }
  return std::sqrt(total);
}

}  // namespace

double pde_norm_error(const FieldSolution& field, const ExactFieldFn& exact,
                      PdeNormKind kind) {
  if (!exact) throw CapabilityError("pde_norm_error: missing exact field");
  const auto& mesh = field.time.mesh;

  if (kind == PdeNormKind::LinfL2) {
    double worst = spatial_l2_error(field, exact, mesh.nodes(0), 0);
    for (int n = 0; n < mesh.intervals(); ++n) {
      const auto [a, b] = mesh.interval(n);
      worst = std::max(worst, spatial_l2_error(field, exact, b, 0));
      for (int j = 1; j <= 10; ++j) {
        const double t = a + j * (b - a) / 11.0;
        worst = std::max(worst, spatial_l2_error(field, exact, t, 0));
      }
    }
    return worst;
  }

  const int max_deriv = kind == PdeNormKind::L2L2 ? 0
                        : kind == PdeNormKind::H1L2 ? 1 : 2;
  double total = 0.0;
  for (int n = 0; n < mesh.intervals(); ++n) {
    const auto [a, b] = mesh.interval(n);
    const double k = b - a;
    const QuadRule& rule = gauss_legendre_rule(mesh.degrees[n] + 8);
    for (int j = 0; j < rule.size(); ++j) {
      const double t = 0.5 * (a + b) + 0.5 * k * rule.nodes(j);
      const double w = 0.5 * k * rule.weights(j);
      for (int d = 0; d <= max_deriv; ++d) {
        const double e = spatial_l2_error(field, exact, t, d);
        total += w * e * e;
      }
    }
  }
  return std::sqrt(total);
}

std::pair<double, double> pde_nodal_errors(const FieldSolution& field,
                                           const ExactFieldFn& exact) {
  if (!exact) throw CapabilityError("pde_nodal_errors: missing exact field");
  const auto& mesh = field.time.mesh;
  double max_val = 0.0, max_der = 0.0;
  for (int n = 1; n <= mesh.intervals(); ++n) {
    const double t = mesh.nodes(n);
    max_val = std::max(max_val, spatial_l2_error(field, exact, t, 0));
    max_der = std::max(max_der, spatial_l2_error(field, exact, t, 1));
  }
  return {max_val, max_der};
}

}  // namespace c1cpg
