#include "doctest.h"
#include "tailsim/trajectory.hpp"

using namespace tailsim;

TEST_SUITE("trajectory") {
  TEST_CASE("speed along the path follows the profile") {
    const ParametricPath c = circle(20.0, -50.0);
    const SpeedProfile sp;
    const TimedTrajectory tr = arc_length_reparam(c, sp, 20.0, 0.002, 0.0, 1.0);
    for (double t : {0.5, 3.0, 10.0, 19.0}) {
      const TrajectorySample s = tr.sample(t);
      CHECK(s.v.norm() == doctest::Approx(sp.sample(t).s).epsilon(1e-6));
      CHECK((s.p - c.eval(s.w, 0)).norm() < 1e-6);
    }
  }

  TEST_CASE("circle kinematics") {
    const ParametricPath c = circle(10.0, 0.0);
    SpeedProfile sp;
    const TimedTrajectory tr = arc_length_reparam(c, sp, 60.0, 0.002);
    const TrajectorySample s = tr.sample(50.0);  // speed settled
    CHECK(s.a.norm() == doctest::Approx(25.0 * 25.0 / 10.0).epsilon(1e-4));
    CHECK(std::abs(s.v.dot(s.a)) < 1e-3 * s.a.norm() * s.v.norm());
  }

  TEST_CASE("traversal direction") {
    const ParametricPath c = circle(10.0, 0.0);
    const SpeedProfile sp;
    const TimedTrajectory fwd = arc_length_reparam(c, sp, 5.0, 0.01, 0.0, 1.0);
    const TimedTrajectory back = arc_length_reparam(c, sp, 5.0, 0.01, 0.0, -1.0);
    CHECK(fwd.sample(5.0).w > 0.0);
    CHECK(back.sample(5.0).w < 0.0);
  }

  TEST_CASE("interpolation reproduces the grid") {
    const TimedTrajectory tr = arc_length_reparam(circle(5.0, 0.0), SpeedProfile{}, 2.0, 0.01);
    const TrajectorySample& g = tr.samples()[37];
    CHECK((tr.sample(g.t).p - g.p).norm() < 1e-12);
  }

  TEST_CASE("out of range") {
    const TimedTrajectory tr = arc_length_reparam(circle(5.0, 0.0), SpeedProfile{}, 2.0, 0.01);
    CHECK_THROWS_AS(tr.sample(2.5), EndOfTrajectory);
    CHECK_THROWS_AS(tr.sample(-1.0), EndOfTrajectory);
    CHECK_THROWS_AS(arc_length_reparam(circle(5.0, 0.0), SpeedProfile{}, 1.0, 0.01, 0.0, 2.0), InvalidInputError);
  }
}
