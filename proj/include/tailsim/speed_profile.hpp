#pragma once

#include <Eigen/Core>

namespace tailsim {

struct SpeedSample {
  double s{0};      // m/s
  double s_dot{0};  // m/s^2
  double s_ddot{0}; // m/s^3
};

/// Reference speed s_r = V_s H(s) G(s) with
/// G(s) = wn^2 / ((s^2 + 2 zeta wn s + wn^2)(alpha s + 1)),
/// realized in controllable canonical form with state (s_r, s_r', s_r'').
struct SpeedProfile {
  double final_speed{25.0};
  double zeta{1.2};
  double wn{0.8};
  double alpha{1.25};

  Eigen::Matrix3d system_matrix() const;
  Eigen::Vector3d input_vector() const;

  /// Exact sample at time t >= 0 from rest.
  SpeedSample sample(double t) const;

  /// State derivative for numerical integration alongside the plant.
  Eigen::Vector3d derivative(const Eigen::Vector3d& state) const;

  /// Time at which s_r first reaches `fraction` of the final speed.
  double rise_time(double fraction) const;
};

}  // namespace tailsim
