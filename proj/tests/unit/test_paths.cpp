#include <random>

#include "doctest.h"
#include "tailsim/harness.hpp"
#include "tailsim/paths.hpp"

using namespace tailsim;

namespace {
double fd_error(const ParametricPath& p, double w, int order) {
  const double h = 1e-5;
  const Vec3d fd = (p.eval(w + h, order - 1) - p.eval(w - h, order - 1)) / (2 * h);
  return (fd - p.eval(w, order)).norm() / std::max(1.0, fd.norm());
}
}  // namespace

TEST_SUITE("paths") {
  TEST_CASE("circle values") {
    const ParametricPath c = circle(20.0, -50.0);
    CHECK((c.eval(0.0, 0) - Vec3d(20, 0, -50)).norm() < 1e-14);
    CHECK((c.eval(M_PI / 2, 0) - Vec3d(0, 20, -50)).norm() < 1e-13);
    CHECK(c.mean_tangent_norm() == doctest::Approx(20.0));
  }

  TEST_CASE("default lissajous at w = 0") {
    const ParametricPath l = default_lissajous();
    // c = (50, 15, 5), omega = (1, 2, 2), d = (0, pi/2, 0)
    CHECK((l.eval(0.0, 0) - Vec3d(50.0, 0.0, -45.0)).norm() < 1e-12);
    CHECK((l.eval(0.0, 1) - Vec3d(0.0, -30.0, 0.0)).norm() < 1e-12);
  }

  TEST_CASE("derivatives agree with central differences") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
    for (const ParametricPath& p : {circle(7.0, -3.0), default_lissajous()}) {
      for (int i = 0; i < 100; ++i) {
        const double w = u(rng);
        for (int k = 1; k <= 3; ++k) CHECK(fd_error(p, w, k) < 1e-7);
      }
    }
  }

  TEST_CASE("jet equals per-order evaluation") {
    const ParametricPath l = default_lissajous();
    const PathJet<double> j = l.jet(0.7);
    for (int k = 0; k < 4; ++k) CHECK((j.d[k] - l.eval(0.7, k)).norm() == 0.0);
  }

  TEST_CASE("rescaled path traces the same curve") {
    const ParametricPath l = default_lissajous();
    const double s = 3.5;
    const ParametricPath r = rescaled(l, s);
    for (double w : {0.0, 0.4, 2.0, 5.0}) {
      CHECK((r.eval(s * w, 0) - l.eval(w, 0)).norm() < 1e-12);
      CHECK((r.eval(s * w, 1) * s - l.eval(w, 1)).norm() < 1e-12);
      CHECK((r.eval(s * w, 3) * s * s * s - l.eval(w, 3)).norm() < 1e-10);
    }
    for (int k = 1; k <= 3; ++k) CHECK(fd_error(r, 2.0, k) < 1e-7);
    CHECK_THROWS_AS(rescaled(l, 0.0), InvalidInputError);
  }

  TEST_CASE("nearest parameter") {
    const ParametricPath c = circle(10.0, 0.0);
    const double w = nearest_parameter(c, Vec3d(0.0, 30.0, 4.0));
    CHECK(w == doctest::Approx(M_PI / 2).epsilon(1e-7));
  }

  TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(circle(-1.0, 0.0), InvalidInputError);
    CHECK_THROWS_AS(circle(1.0, 0.0).eval(0.0, 4), InvalidInputError);
  }
}
