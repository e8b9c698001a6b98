#include "c1cpg/examples.hpp"

#include <cmath>
#include <numbers>

namespace c1cpg {

namespace {

constexpr double kPi = std::numbers::pi;

ProblemDef make_oscillator() {
  ProblemDef p;
  p.dim = 1;
  // Manufactured so that u = sin t solves u'' = sin(u) - 2 cos(u') + g(t):
  // u'' = -sin t, so g(t) = -sin t - sin(sin t) + 2 cos(cos t).
  p.rhs = [](double t, const Eigen::VectorXd& u,
             const Eigen::VectorXd& v) -> Eigen::VectorXd {
    const double g = -std::sin(t) - std::sin(std::sin(t)) + 2.0 * std::cos(std::cos(t));
    Eigen::VectorXd f(1);
    f(0) = std::sin(u(0)) - 2.0 * std::cos(v(0)) + g;
    return f;
  };
  p.u0 = Eigen::VectorXd::Constant(1, 0.0);
  p.u1 = Eigen::VectorXd::Constant(1, 1.0);
  p.lipschitz = 3.0;  // |df/du| <= 1, |df/du'| <= 2
  p.exact = [](double t, int deriv) -> Eigen::VectorXd {
    Eigen::VectorXd u(1);
    u(0) = deriv == 0 ? std::sin(t) : (deriv == 1 ? std::cos(t) : -std::sin(t));
    return u;
  };
  return p;
}

ProblemDef make_two_body() {
  constexpr double ecc = 0.2;
  ProblemDef p;
  p.dim = 2;
  p.rhs = [](double, const Eigen::VectorXd& q,
             const Eigen::VectorXd&) -> Eigen::VectorXd {
    const double r = q.norm();
    return Eigen::VectorXd(-q / (r * r * r));
  };
  p.u0 = Eigen::VectorXd::Zero(2);
  p.u0(0) = 1.0 - ecc;
  p.u1 = Eigen::VectorXd::Zero(2);
  p.u1(1) = std::sqrt((1.0 + ecc) / (1.0 - ecc));
  // Local estimate: the Jacobian of -q/|q|^3 is bounded by 2/r^3 and the
  // orbit keeps r >= 1 - ecc.
  p.lipschitz = 2.0 / std::pow(1.0 - ecc, 3);
  return p;
}

WavePde make_linear_wave() {
  WavePde pde;
  pde.b = 1.0;
  // Manufactured for u = x(1-x) y(1-y) cos t: u_tt - Laplace(u) =
  // (-XY + 2(X+Y)) cos t with X = x(1-x), Y = y(1-y). Pure forcing.
  pde.f = [](const Eigen::VectorXd& x, double t, double) {
    const double X = x(0) * (1.0 - x(0));
    const double Y = x(1) * (1.0 - x(1));
    return (-X * Y + 2.0 * (X + Y)) * std::cos(t);
  };
  pde.u0 = [](const Eigen::VectorXd& x) {
    return x(0) * (1.0 - x(0)) * x(1) * (1.0 - x(1));
  };
  pde.u1 = [](const Eigen::VectorXd&) { return 0.0; };
  pde.lipschitz_u = 0.0;
  return pde;
}

double linear_wave_exact(const Eigen::VectorXd& x, double t, int t_deriv) {
  const double s = x(0) * (1.0 - x(0)) * x(1) * (1.0 - x(1));
  switch (t_deriv) {
    case 0: return s * std::cos(t);
    case 1: return -s * std::sin(t);
    default: return -s * std::cos(t);
  }
}

WavePde make_sine_gordon() {
  WavePde pde;
  pde.b = 1.0;
  // Model u_tt - Laplace(u) + sin(u) = f0 with the manufactured solution
  // u = sin(pi x) sin(pi y) cos(2 pi t):
  //   f0 = -2 pi^2 S cos(2 pi t) + sin(S cos(2 pi t)), S = sin(pi x) sin(pi y).
  // The sine term moves to the right side of the second-order system, so the
  // nonlinearity handed to the solver is f(x,t,u) = f0(x,t) - sin(u).
  pde.f = [](const Eigen::VectorXd& x, double t, double u) {
    const double S = std::sin(kPi * x(0)) * std::sin(kPi * x(1));
    const double c = std::cos(2.0 * kPi * t);
    const double f0 = -2.0 * kPi * kPi * S * c + std::sin(S * c);
    return f0 - std::sin(u);
  };
  pde.u0 = [](const Eigen::VectorXd& x) {
    return std::sin(kPi * x(0)) * std::sin(kPi * x(1));
  };
  pde.u1 = [](const Eigen::VectorXd&) { return 0.0; };
  pde.lipschitz_u = 1.0;  // |d/du sin u| <= 1
  return pde;
}

double sine_gordon_exact(const Eigen::VectorXd& x, double t, int t_deriv) {
  const double S = std::sin(kPi * x(0)) * std::sin(kPi * x(1));
  const double w = 2.0 * kPi;
  switch (t_deriv) {
    case 0: return S * std::cos(w * t);
    case 1: return -w * S * std::sin(w * t);
    default: return -w * w * S * std::cos(w * t);
  }
}

std::vector<ExampleDef> make_registry() {
  std::vector<ExampleDef> reg;

  ExampleDef ex1;
  ex1.id = "ex1";
  ex1.summary = "nonlinear oscillator u'' = sin(u) - 2cos(u') + g(t), exact sin t";
  ex1.default_T = 1.0;
  ex1.make_problem = make_oscillator;
  reg.push_back(ex1);

  ExampleDef two_body;
  two_body.id = "two_body";
  two_body.summary = "planar Kepler problem q'' = -q/|q|^3, eccentricity 0.2";
  two_body.default_T = 10.0;
  two_body.make_problem = make_two_body;
  reg.push_back(two_body);

  ExampleDef wave;
  wave.id = "linear_wave";
  wave.summary = "forced linear wave on (0,1)^2, exact x(1-x)y(1-y)cos t";
  wave.is_pde = true;
  wave.default_T = 1.0;
  wave.make_pde = make_linear_wave;
  wave.domain = {{0.0, 1.0}, {0.0, 1.0}};
  wave.default_space_degree = 4;
  wave.exact_field = linear_wave_exact;
  reg.push_back(wave);

  ExampleDef sg;
  sg.id = "sine_gordon";
  sg.summary = "forced sine-Gordon on (-1,1)^2, exact sin(pi x)sin(pi y)cos(2 pi t)";
  sg.is_pde = true;
  sg.default_T = 2.0;
  sg.make_pde = make_sine_gordon;
  sg.domain = {{-1.0, 1.0}, {-1.0, 1.0}};
  sg.default_space_degree = 20;
  sg.exact_field = sine_gordon_exact;
  reg.push_back(sg);

  return reg;
}

}  // namespace

const std::vector<ExampleDef>& registry() {
  static const std::vector<ExampleDef> reg = make_registry();
  return reg;
}

const ExampleDef& find_example(const std::string& id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  throw LookupError("unknown example id: " + id);
}

}  // namespace c1cpg
