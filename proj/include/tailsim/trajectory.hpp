#pragma once

#include <vector>

#include "tailsim/paths.hpp"
#include "tailsim/speed_profile.hpp"

namespace tailsim {

struct TrajectorySample {
  double t{0};
  double w{0};
  Vec3d p{Vec3d::Zero()};
  Vec3d v{Vec3d::Zero()};
  Vec3d a{Vec3d::Zero()};
  Vec3d j{Vec3d::Zero()};
};

/// Time-referenced trajectory sampled on a uniform grid.
class TimedTrajectory {
 public:
  TimedTrajectory() = default;
  TimedTrajectory(double dt, std::vector<TrajectorySample> samples);

  double dt() const { return dt_; }
  double duration() const;
  const std::vector<TrajectorySample>& samples() const { return samples_; }

  /// Cubic Hermite interpolation on (p, v) and on (a, j). Throws EndOfTrajectory outside [0, duration].
  TrajectorySample sample(double t) const;

 private:
  double dt_{0};
  std::vector<TrajectorySample> samples_;
};

/// Traverse `path` from w0 with speed s_r(t): w' = direction * s_r / |f'(w)|.
/// direction = -1 follows the traversal sense of the guiding vector field.
/// Throws DegenerateError if |f'| < 1e-9 along the way.
TimedTrajectory arc_length_reparam(const ParametricPath& path, const SpeedProfile& speed, double duration, double dt,
                                   double w0 = 0.0, double direction = 1.0);

}  // namespace tailsim
