#include "doctest.h"
#include "tailsim/engine.hpp"

using namespace tailsim;

namespace {
SimConfig calm_circle(GuidanceKind kind, double duration) {
  SimConfig c;
  c.guidance = kind;
  c.path = circle(20.0, -50.0);
  c.speed.final_speed = 15.0;
  c.wind.speed = 0.0;
  c.wind.gust = false;
  c.accel_noise = 0.0;
  c.duration = duration;
  return c;
}
}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("calm circle is tracked by both guidance laws") {
    for (GuidanceKind k : {GuidanceKind::gvf, GuidanceKind::traj}) {
      const RunResult r = run_simulation(calm_circle(k, 20.0));
      REQUIRE_FALSE(r.diverged);
      REQUIRE(r.log.size() == 10001);
      double worst = 0.0;
      for (const LogRow& row : r.log) {
        CHECK(std::abs(row.q.norm() - 1.0) < 1e-9);
        if (row.t > 12.0) worst = std::max(worst, row.e_norm);
      }
      CHECK(worst < 1.0);
      CHECK(r.log.back().v.norm() == doctest::Approx(15.0).epsilon(0.05));
    }
  }

  TEST_CASE("runs are reproducible and seeds matter") {
    SimConfig c = calm_circle(GuidanceKind::gvf, 3.0);
    c.accel_noise = 0.05;
    c.wind = WindCondition{5.0, 225.0 * M_PI / 180.0, true, 11};
    const RunResult a = run_simulation(c);
    const RunResult b = run_simulation(c);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i) {
      CHECK(a.log[i].p == b.log[i].p);
      CHECK(a.log[i].u.as_vector() == b.log[i].u.as_vector());
    }
    c.seed = 12;
    const RunResult d = run_simulation(c);
    CHECK(d.log.back().p != a.log.back().p);
  }

  TEST_CASE("starts trimmed at the offset point") {
    SimConfig c = calm_circle(GuidanceKind::traj, 0.5);
    c.init_offset = Vec3d(3.0, 0.0, 0.0);
    const RunResult r = run_simulation(c);
    CHECK((r.log.front().p - (c.path.eval(0.0, 0) + c.init_offset)).norm() < 1e-12);
    CHECK(r.log.front().v.norm() == 0.0);
    CHECK(r.log.front().accel.norm() < 1e-9);
  }

  TEST_CASE("configuration errors") {
    SimConfig c = calm_circle(GuidanceKind::gvf, 1.0);
    c.physics_hz = 750.0;
    CHECK_THROWS_AS(Simulation{c}, InvalidInputError);
    c = calm_circle(GuidanceKind::gvf, 1.0);
    c.k_eff = 0.0;
    CHECK_THROWS_AS(Simulation{c}, InvalidInputError);
    c = calm_circle(GuidanceKind::gvf, 1.0);
    c.actuators.limits.rotor_max = -1.0;
    CHECK_THROWS_AS(Simulation{c}, InvalidInputError);
    c = calm_circle(GuidanceKind::gvf, 1.0);
    c.duration = -1.0;
    CHECK_THROWS_AS(Simulation{c}, InvalidInputError);
  }

  TEST_CASE("divergence stops the run") {
    SimConfig c = calm_circle(GuidanceKind::traj, 5.0);
    c.init_offset = Vec3d(2e4, 0.0, 0.0);
    const RunResult r = run_simulation(c);
    CHECK(r.diverged);
    CHECK_FALSE(r.message.empty());
    CHECK(r.log.size() < 10);
  }
}
