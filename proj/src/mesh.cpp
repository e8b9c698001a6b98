#include "c1cpg/mesh.hpp"

#include <cmath>

namespace c1cpg {

TimeMesh build_uniform(double T, int N, int r) {
  if (!(T > 0.0)) throw ValidationError("build_uniform: horizon must be positive");
  if (N < 1) throw ValidationError("build_uniform: need at least one interval");
  if (r < 2) throw InvalidDegreeError("build_uniform: degree must be >= 2");
  TimeMesh mesh;
  mesh.nodes.resize(N + 1);
  for (int n = 0; n <= N; ++n) mesh.nodes(n) = n * T / N;
  mesh.degrees.assign(N, r);
  return mesh;
}

TimeMesh build_from_arrays(const std::vector<double>& nodes,
                           const std::vector<int>& degrees) {
  if (nodes.size() < 2)
    throw ValidationError("build_from_arrays: need at least two nodes");
  if (degrees.size() + 1 != nodes.size())
    throw ValidationError("build_from_arrays: need one degree per interval");
  for (size_t n = 0; n + 1 < nodes.size(); ++n)
    if (!(nodes[n] < nodes[n + 1]))
      throw ValidationError("build_from_arrays: nodes must be strictly increasing");
  for (int r : degrees)
    if (r < 2) throw InvalidDegreeError("build_from_arrays: degrees must be >= 2");
  TimeMesh mesh;
  mesh.nodes = Eigen::Map<const Eigen::VectorXd>(nodes.data(), nodes.size());
  mesh.degrees = degrees;
  return mesh;
}

std::vector<bool> contraction_check(const TimeMesh& mesh, double lipschitz) {
  if (!(lipschitz > 0.0))
    throw ValidationError("contraction_check: Lipschitz constant must be positive");
  std::vector<bool> flags(mesh.intervals());
  for (int n = 0; n < mesh.intervals(); ++n) {
    const double k = mesh.step(n);
    flags[n] = 0.5 * lipschitz * k * std::sqrt(8.0 + k * k) < 1.0;
  }
  return flags;
}

}  // namespace c1cpg
