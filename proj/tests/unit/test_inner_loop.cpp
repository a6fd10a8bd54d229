#include <complex>

#include "doctest.h"
#include "tailsim/inner_loop.hpp"

using namespace tailsim;

namespace {
double magnitude(const std::array<double, 5>& c, double omega, double fs) {
  const std::complex<double> z = std::polar(1.0, omega / fs);
  const std::complex<double> zi = 1.0 / z;
  return std::abs((c[0] + c[1] * zi + c[2] * zi * zi) / (1.0 + c[3] * zi + c[4] * zi * zi));
}
}  // namespace

TEST_SUITE("inner_loop") {
  TEST_CASE("butterworth gain") {
    const Butterworth2<1> f(50.0, 500.0);
    CHECK(f.dc_gain() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(magnitude(f.coefficients(), 50.0, 500.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(magnitude(f.coefficients(), 500.0, 500.0) < 0.05);
  }

  TEST_CASE("butterworth reset holds a constant") {
    Butterworth2<3> f(30.0, 500.0);
    const Vec3d x(1.0, -2.0, 3.5);
    f.reset(x);
    for (int i = 0; i < 10; ++i) CHECK((f.update(x) - x).norm() < 1e-12);
  }

  TEST_CASE("butterworth step settles") {
    Butterworth2<1> f(50.0, 500.0);
    Eigen::Matrix<double, 1, 1> one;
    one << 1.0;
    double y = 0.0;
    for (int i = 0; i < 500; ++i) y = f.update(one)[0];
    CHECK(y == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("incremental laws") {
    CHECK((indi_accel(Vec3d(1, 2, 3), Vec3d(0.5, 0.5, 0.5), Vec3d(0, 0, -9.81)) - Vec3d(0.5, 1.5, -7.31)).norm() <
          1e-12);
    CHECK((indi_moment(Vec3d(1, 0, 0), Vec3d(0.2, 0, 0), Vec3d(0, 1, 0)) - Vec3d(0.8, 1, 0)).norm() < 1e-15);
  }

  TEST_CASE("attitude pd drives toward the command") {
    const AttitudeGains g;
    const Quatd q_cmd(Eigen::AngleAxisd(0.2, Vec3d::UnitX()));
    const Quatd q_e = attitude_error(q_cmd, Quatd::Identity());
    const Vec3d a = attitude_pd(q_e, Vec3d::Zero(), Vec3d::Zero(), g);
    CHECK(a.x() > 0.0);
    CHECK(std::abs(a.y()) < 1e-12);
    CHECK(std::abs(a.z()) < 1e-12);
    CHECK(a.x() == doctest::Approx(400.0 * std::sin(0.1)));
    const Vec3d damp = attitude_pd(Quatd::Identity(), Vec3d(0, 1, 0), Vec3d(0, 0.5, 0), g);
    CHECK((damp - Vec3d(0, -14.0, 0)).norm() < 1e-12);
    CHECK(attitude_error(q_cmd, q_cmd).vec().norm() < 1e-15);
  }

  TEST_CASE("controller holds hover") {
    const ModelCoefficients c = ModelCoefficients::cyclone();
    ControllerParams p;
    Controller ctrl(p, c);
    const double wh = hover_rotor_speed(c.simplified());
    Measurement m;
    m.applied = ControlInput{0.0, 0.0, wh, wh};
    m.accel = Vec3d::Zero();
    ctrl.reset(m);
    ControlInput u;
    for (int i = 0; i < 50; ++i) u = ctrl.step(ControlTarget{}, m);
    CHECK(u.rotor1 == doctest::Approx(wh).epsilon(1e-9));
    CHECK(u.rotor2 == doctest::Approx(wh).epsilon(1e-9));
    CHECK(std::abs(u.elevon1) < 1e-9);
    CHECK(std::abs(u.elevon2) < 1e-9);
    CHECK_FALSE(ctrl.diagnostics().held);
    CHECK_FALSE(ctrl.diagnostics().clipped);
  }

  TEST_CASE("controller raises thrust for an upward command") {
    const ModelCoefficients c = ModelCoefficients::cyclone();
    Controller ctrl(ControllerParams{}, c);
    const double wh = hover_rotor_speed(c.simplified());
    Measurement m;
    m.applied = ControlInput{0.0, 0.0, wh, wh};
    ctrl.reset(m);
    ControlTarget up;
    up.a_c = Vec3d(0, 0, -2.0);
    const ControlInput u = ctrl.step(up, m);
    CHECK(u.rotor1 > wh);
    CHECK(u.rotor1 == doctest::Approx(u.rotor2));
  }

  TEST_CASE("invalid parameters") {
    ControllerParams p;
    p.cutoff = 2000.0;
    CHECK_THROWS_AS(Controller(p, ModelCoefficients::cyclone()), InvalidInputError);
    p = ControllerParams{};
    p.gains.kq.x() = 0.0;
    CHECK_THROWS_AS(Controller(p, ModelCoefficients::cyclone()), InvalidInputError);
  }
}
