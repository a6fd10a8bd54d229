#include "tailsim/traj_guidance.hpp"

#include "tailsim/errors.hpp"

namespace tailsim {

void TrajGains::validate() const {
  if (!kp.allFinite() || !kv.allFinite() || (kp.array() < 0.0).any() || (kv.array() <= 0.0).any()) {
    throw InvalidInputError("trajectory gains must be positive");
  }
  if (!(sat_a > 0.0)) throw InvalidInputError("trajectory saturation must be positive");
}

TrajGains equivalent_gains(const Vec3d& k_eff, const Vec3d& k_v, double sat_a) {
  if ((k_eff.array() < 0.0).any() || (k_v.array() <= 0.0).any()) {
    throw InvalidInputError("equivalent_gains: gains must be positive");
  }
  TrajGains g;
  g.kp = k_eff.cwiseProduct(k_v);
  g.kv = k_v + k_eff;
  g.sat_a = sat_a;
  return g;
}

Vec3d clamp_norm(const Vec3d& x, double limit) {
  const double n = x.norm();
  if (n <= limit) return x;
  return x * (limit / n);
}

Vec3d traj_accel(const Vec3d& p, const Vec3d& v, const TrajectorySample& ref, const TrajGains& g) {
  const Vec3d pos_term = clamp_norm(g.kp.cwiseProduct(p - ref.p), g.sat_a);
  return ref.a - g.kv.cwiseProduct(v - ref.v) - pos_term;
}

}  // namespace tailsim
