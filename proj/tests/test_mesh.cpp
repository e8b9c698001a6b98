#include <doctest.h>

#include <cmath>

#include "c1cpg/mesh.hpp"

using namespace c1cpg;

TEST_CASE("uniform mesh builder") {
  const TimeMesh mesh = build_uniform(2.0, 4, 3);
  CHECK(mesh.intervals() == 4);
  CHECK(mesh.horizon() == doctest::Approx(2.0));
  for (int n = 0; n < 4; ++n) {
    CHECK(mesh.step(n) == doctest::Approx(0.5));
    CHECK(mesh.degrees[n] == 3);
  }
  CHECK(mesh.interval(2).first == doctest::Approx(1.0));
  CHECK(mesh.interval(2).second == doctest::Approx(1.5));

  CHECK_THROWS_AS(build_uniform(1.0, 0, 3), ValidationError);
  CHECK_THROWS_AS(build_uniform(-1.0, 4, 3), ValidationError);
  CHECK_THROWS_AS(build_uniform(1.0, 4, 1), InvalidDegreeError);
}

TEST_CASE("mesh from explicit arrays") {
  const TimeMesh mesh = build_from_arrays({0.0, 0.25, 1.0, 1.5}, {2, 4, 3});
  CHECK(mesh.intervals() == 3);
  CHECK(mesh.step(1) == doctest::Approx(0.75));
  CHECK(mesh.degrees[1] == 4);

  CHECK_THROWS_AS(build_from_arrays({0.0, 1.0}, {2, 3}), ValidationError);
  CHECK_THROWS_AS(build_from_arrays({0.0, 1.0, 0.5}, {2, 2}), ValidationError);
  CHECK_THROWS_AS(build_from_arrays({0.0, 1.0, 2.0}, {2, 1}), InvalidDegreeError);
  CHECK_THROWS_AS(build_from_arrays({0.0}, {}), ValidationError);
}

TEST_CASE("contraction precheck") {
  // Flag: 0.5 * L * k * sqrt(8 + k^2) < 1.
  {
    const TimeMesh mesh = build_uniform(1.0, 4, 3);  // k = 1/4
    const auto flags = contraction_check(mesh, 3.0);
    const double q = 0.5 * 3.0 * 0.25 * std::sqrt(8.0 + 0.25 * 0.25);
    CHECK(q == doctest::Approx(1.0647953).epsilon(1e-6));
    for (bool ok : flags) CHECK_FALSE(ok);
  }
  {
    const TimeMesh mesh = build_uniform(1.0, 8, 3);  // k = 1/8
    const auto flags = contraction_check(mesh, 3.0);
    const double q = 0.5 * 3.0 * 0.125 * std::sqrt(8.0 + 0.125 * 0.125);
    CHECK(q == doctest::Approx(0.5309).epsilon(1e-3));
    for (bool ok : flags) CHECK(ok);
  }
  {
    const TimeMesh mesh = build_uniform(10.0, 2, 2);  // huge steps, tiny L
    const auto flags = contraction_check(mesh, 1e-4);
    for (bool ok : flags) CHECK(ok);
  }
  // Refinement can only turn flags on, never off.
  for (double L : {0.5, 2.0, 7.0}) {
    bool prev_all = false;
    for (int N : {2, 4, 8, 16, 64, 256}) {
      const auto flags = contraction_check(build_uniform(1.0, N, 3), L);
      bool all = true;
      for (bool ok : flags) all = all && ok;
      if (prev_all) CHECK(all);
      prev_all = all;
    }
    CHECK(prev_all);  // small enough steps always contract
  }
}
