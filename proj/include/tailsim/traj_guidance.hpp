#pragma once

// Trajectory-tracking PD guidance, the baseline against the vector field.

#include <limits>

#include "tailsim/trajectory.hpp"

namespace tailsim {

struct TrajGains {
  Vec3d kp{Vec3d::Constant(2.5)};
  Vec3d kv{Vec3d::Constant(5.5)};
  /// Norm limit of the position-error term (m/s^2); infinity disables it.
  double sat_a{10.0};

  void validate() const;
};

/// K_p' = K_eff K_v, K_v' = K_v + K_eff.
TrajGains equivalent_gains(const Vec3d& k_eff, const Vec3d& k_v,
                           double sat_a = std::numeric_limits<double>::infinity());

/// a_c = a_r - K_v' (v - v_r) - sat(K_p' (p - p_r)).
Vec3d traj_accel(const Vec3d& p, const Vec3d& v, const TrajectorySample& ref, const TrajGains& g);

/// Norm clamp that keeps direction.
Vec3d clamp_norm(const Vec3d& x, double limit);

}  // namespace tailsim
