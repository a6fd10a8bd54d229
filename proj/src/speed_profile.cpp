#include "tailsim/speed_profile.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "tailsim/errors.hpp"

namespace tailsim {

Eigen::Matrix3d SpeedProfile::system_matrix() const {
  const double a2 = 1.0 + 2.0 * zeta * wn * alpha;
  const double a1 = 2.0 * zeta * wn + alpha * wn * wn;
  Eigen::Matrix3d a;
  a << 0.0, 1.0, 0.0,  //
      0.0, 0.0, 1.0,   //
      -wn * wn / alpha, -a1 / alpha, -a2 / alpha;
  return a;
}

Eigen::Vector3d SpeedProfile::input_vector() const { return {0.0, 0.0, wn * wn / alpha}; }

SpeedSample SpeedProfile::sample(double t) const {
  if (t <= 0.0) return {};
  const Eigen::Vector3d steady(final_speed, 0.0, 0.0);
  const Eigen::Matrix3d phi = (system_matrix() * t).exp();
  const Eigen::Vector3d x = steady - phi * steady;
  return {x[0], x[1], x[2]};
}

Eigen::Vector3d SpeedProfile::derivative(const Eigen::Vector3d& state) const {
  return system_matrix() * state + input_vector() * final_speed;
}

double SpeedProfile::rise_time(double fraction) const {
  if (!(fraction > 0.0 && fraction < 1.0)) throw InvalidInputError("rise_time: fraction must be in (0,1)");
  // s_r is monotone for the default parameters; bracket then bisect.
  double lo = 0.0;
  double hi = 1.0;
  while (sample(hi).s < fraction * final_speed) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) throw InvalidInputError("rise_time: profile does not reach target");
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (sample(mid).s < fraction * final_speed ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace tailsim
