#include <complex>

#include "doctest.h"
#include "tailsim/speed_profile.hpp"

using namespace tailsim;

namespace {
// Step response from the partial-fraction expansion of V wn^2 / (s (s^2 + 2 zeta wn s + wn^2)(alpha s + 1)).
double step_response(const SpeedProfile& p, double t) {
  const double r = std::sqrt(p.zeta * p.zeta - 1.0);
  const double poles[3] = {-p.wn * (p.zeta - r), -p.wn * (p.zeta + r), -1.0 / p.alpha};
  double y = 1.0;
  for (int i = 0; i < 3; ++i) {
    double den = p.alpha * poles[i];
    for (int j = 0; j < 3; ++j) {
      if (j != i) den *= poles[i] - poles[j];
    }
    y += p.wn * p.wn / den * std::exp(poles[i] * t);
  }
  return p.final_speed * y;
}
}  // namespace

TEST_SUITE("speed_profile") {
  TEST_CASE("starts at rest") {
    const SpeedProfile p;
    const SpeedSample s = p.sample(0.0);
    CHECK(s.s == 0.0);
    CHECK(s.s_dot == 0.0);
    CHECK(s.s_ddot == 0.0);
  }

  TEST_CASE("matches the partial-fraction step response") {
    const SpeedProfile p;
    for (double t : {0.1, 0.5, 1.0, 3.0, 7.0, 15.0, 40.0}) {
      CHECK(p.sample(t).s == doctest::Approx(step_response(p, t)).epsilon(1e-10));
    }
    CHECK(p.sample(200.0).s == doctest::Approx(25.0).epsilon(1e-12));
  }

  TEST_CASE("derivatives agree with finite differences") {
    const SpeedProfile p{25.0, 1.2, 0.8, 1.25};
    const double h = 1e-5;
    for (double t : {0.5, 2.0, 5.0, 10.0}) {
      const SpeedSample a = p.sample(t - h), b = p.sample(t + h), m = p.sample(t);
      CHECK(std::abs((b.s - a.s) / (2 * h) - m.s_dot) < 1e-8);
      CHECK(std::abs((b.s_dot - a.s_dot) / (2 * h) - m.s_ddot) < 1e-8);
    }
  }

  TEST_CASE("monotone rise") {
    const SpeedProfile p;
    double last = 0.0;
    for (double t = 0.05; t < 30.0; t += 0.05) {
      const double s = p.sample(t).s;
      CHECK(s >= last);
      last = s;
    }
  }

  TEST_CASE("rise time") {
    const SpeedProfile p;
    const double t95 = p.rise_time(0.95);
    CHECK(p.sample(t95).s == doctest::Approx(0.95 * 25.0).epsilon(1e-9));
    CHECK(p.rise_time(0.5) < t95);
  }

  TEST_CASE("state derivative matches the sampled derivatives") {
    const SpeedProfile p;
    const SpeedSample s = p.sample(2.0);
    const Eigen::Vector3d d = p.derivative(Eigen::Vector3d(s.s, s.s_dot, s.s_ddot));
    const double h = 1e-5;
    CHECK(d[0] == doctest::Approx(s.s_dot));
    CHECK(d[2] == doctest::Approx((p.sample(2.0 + h).s_ddot - p.sample(2.0 - h).s_ddot) / (2 * h)).epsilon(1e-6));
  }
}
