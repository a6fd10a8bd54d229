#include "doctest.h"
#include "tailsim/vehicle.hpp"

using namespace tailsim;

TEST_SUITE("vehicle") {
  TEST_CASE("cyclone coefficients match the identified table") {
    const ModelCoefficients c = ModelCoefficients::cyclone();
    CHECK(c.cx1 == -14.4);
    CHECK(c.cx2 == 6.83e-2);
    CHECK(c.cx3 == -8.80e-6);
    CHECK(c.cy1 == -8.41e-2);
    CHECK(c.cz1 == -3.00e-2);
    CHECK(c.cz2 == -7.35e-6);
    CHECK(c.mux1 == 3.90e-5);
    CHECK(c.mux2 == 3.71e-3);
    CHECK(c.muy1 == -4.24e-5);
    CHECK(c.muy2 == 2.53e-1);
    CHECK(c.muy3 == -8.88e-2);
    CHECK(c.muy4 == -7.68e-3);
    CHECK(c.muz1 == -5.83e-5);
    CHECK(c.muz2 == 3.44e-1);
    CHECK(c.muz3 == -3.97e-6);
    const ModelCoefficients s = c.simplified();
    CHECK(s.cy1 == 0.0);
    CHECK(s.mux2 == 0.0);
    CHECK(s.muy3 == 0.0);
    CHECK(s.muy4 == 0.0);
    CHECK(s.cx1 == c.cx1);
  }

  TEST_CASE("specific force by hand") {
    ModelCoefficients c;
    c.cx1 = -2.0, c.cx2 = 0.5, c.cx3 = 0.1, c.cy1 = -0.3, c.cz1 = -0.05, c.cz2 = -1e-4;
    const Vec3d va(3.0, 0.0, 4.0);  // |va| = 5
    const ControlInput u{0.1, 0.3, 100.0, 200.0};
    const Vec3d f = specific_force_body(va, u, c);
    CHECK(f.x() == doctest::Approx(-2.0 * 5 * 3 + 0.5 * 0.4 * 5 * 4 + 0.1 * (0.1 * 1e4 + 0.3 * 4e4)));
    CHECK(f.y() == doctest::Approx(0.0));
    CHECK(f.z() == doctest::Approx(-0.05 * 5 * 4 - 1e-4 * 5e4));
  }

  TEST_CASE("specific moment by hand") {
    ModelCoefficients c;
    c.mux1 = 1e-4, c.mux2 = 0.2;
    c.muy1 = -2e-5, c.muy2 = 0.3, c.muy3 = -0.1, c.muy4 = -0.01;
    c.muz1 = -3e-5, c.muz2 = 0.4, c.muz3 = -1e-6;
    const Vec3d va(1.0, 2.0, 2.0);  // |va| = 3
    const ControlInput u{0.2, -0.1, 300.0, 100.0};
    const Vec3d m = specific_moment_body(va, u, Eigen::Vector2d(5.0, 1.0), c);
    CHECK(m.x() == doctest::Approx(1e-4 * (9e4 - 1e4) + 0.2 * 3 * 2));
    CHECK(m.y() == doctest::Approx(-2e-5 * (0.2 * 9e4 - 0.1 * 1e4) + 0.3 * 0.1 * 3 * 2 - 0.1 * 3 * 1 - 0.01 * 6));
    CHECK(m.z() == doctest::Approx(-3e-5 * (0.2 * 9e4 + 0.1 * 1e4) + 0.4 * 0.3 * 3 * 2 - 1e-6 * 8e4));
  }

  TEST_CASE("hover equilibrium") {
    const ModelCoefficients c = ModelCoefficients::cyclone();
    const double w = hover_rotor_speed(c);
    CHECK(w == doctest::Approx(816.9130545997599).epsilon(1e-12));
    VehicleState x;
    const VehicleStateDot d = state_derivative(x, ControlInput{0, 0, w, w}, Eigen::Vector2d::Zero(), Vec3d::Zero(), c);
    CHECK(d.v_dot.norm() < 1e-12);
    CHECK(d.omega_dot.norm() < 1e-12);
  }

  TEST_CASE("gyroscopic term") {
    const Vec3d inertia(1.0, 2.0, 3.0);
    const Vec3d w(0.1, 0.2, 0.3);
    // omega x (J omega) scaled by J^-1
    const Vec3d expect((3.0 - 2.0) * 0.2 * 0.3 / 1.0, (1.0 - 3.0) * 0.3 * 0.1 / 2.0, (2.0 - 1.0) * 0.1 * 0.2 / 3.0);
    CHECK((gyroscopic_term(w, inertia) - expect).norm() < 1e-15);
  }

  TEST_CASE("actuators settle on saturated commands") {
    ActuatorParams p;
    ActuatorState a;
    const ControlInput cmd{1.0, -0.2, 2000.0, 500.0};
    const double h = 1e-4;
    for (int i = 0; i < 20000; ++i) {
      const ActuatorStateDot d = actuator_derivative(a, cmd, p);
      a.elevon += h * d.elevon_rate;
      a.elevon_rate += h * d.elevon_accel;
      a.rotor += h * d.rotor_rate;
    }
    CHECK(a.elevon[0] == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(a.elevon[1] == doctest::Approx(-0.2).epsilon(1e-6));
    CHECK(a.rotor[0] == doctest::Approx(1500.0).epsilon(1e-6));
    CHECK(a.rotor[1] == doctest::Approx(500.0).epsilon(1e-6));
  }

  TEST_CASE("motor lag time constant") {
    ActuatorParams p;
    ActuatorState a;
    const ActuatorStateDot d = actuator_derivative(a, ControlInput{0, 0, 300.0, 0.0}, p);
    CHECK(d.rotor_rate[0] == doctest::Approx(300.0 / 0.03));
  }

  TEST_CASE("validation rejects unphysical coefficients") {
    ModelCoefficients c = ModelCoefficients::cyclone();
    c.cz2 = 1e-6;
    CHECK_THROWS_AS(c.validate(), InvalidInputError);
    c = ModelCoefficients::cyclone();
    c.mux1 = -1.0;
    CHECK_THROWS_AS(c.validate(), InvalidInputError);
  }
}
