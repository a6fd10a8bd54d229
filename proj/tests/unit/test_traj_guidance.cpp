#include <limits>

#include "doctest.h"
#include "tailsim/traj_guidance.hpp"

using namespace tailsim;

TEST_SUITE("traj_guidance") {
  TEST_CASE("equivalent gains for K_eff = 0.5, K_v = 5") {
    const TrajGains g = equivalent_gains(Vec3d::Constant(0.5), Vec3d::Constant(5.0));
    CHECK((g.kp - Vec3d::Constant(2.5)).norm() == 0.0);
    CHECK((g.kv - Vec3d::Constant(5.5)).norm() == 0.0);
    CHECK(std::isinf(g.sat_a));
  }

  TEST_CASE("pd law on the reference returns the reference acceleration") {
    TrajectorySample r;
    r.p = Vec3d(1, 2, 3), r.v = Vec3d(4, 5, 6), r.a = Vec3d(-1, 0.5, 2);
    const TrajGains g = equivalent_gains(Vec3d::Constant(0.5), Vec3d::Constant(5.0), 10.0);
    CHECK((traj_accel(r.p, r.v, r, g) - r.a).norm() == 0.0);
  }

  TEST_CASE("position term is norm limited") {
    TrajectorySample r;
    const TrajGains g = equivalent_gains(Vec3d::Constant(0.5), Vec3d::Constant(5.0), 10.0);
    const Vec3d a = traj_accel(Vec3d(25.0, 0.0, 0.0), Vec3d::Zero(), r, g);
    CHECK((a - Vec3d(-10.0, 0.0, 0.0)).norm() < 1e-12);
    TrajGains free = g;
    free.sat_a = std::numeric_limits<double>::infinity();
    CHECK((traj_accel(Vec3d(25.0, 0.0, 0.0), Vec3d::Zero(), r, free) - Vec3d(-62.5, 0.0, 0.0)).norm() < 1e-12);
  }

  TEST_CASE("clamp keeps direction") {
    const Vec3d x(3.0, 4.0, 0.0);
    CHECK((clamp_norm(x, 1.0) - Vec3d(0.6, 0.8, 0.0)).norm() < 1e-15);
    CHECK((clamp_norm(x, 10.0) - x).norm() == 0.0);
  }

  TEST_CASE("invalid gains") {
    CHECK_THROWS_AS(equivalent_gains(Vec3d::Constant(-0.5), Vec3d::Constant(5.0)), InvalidInputError);
    TrajGains g;
    g.sat_a = 0.0;
    CHECK_THROWS_AS(g.validate(), InvalidInputError);
  }
}
