#pragma once

// Differential-flatness transform of the simplified tailsitter model under
// wind: flat output derivatives -> attitude, specific thrust, body rate and
// actuator commands.

#include <optional>

#include "tailsim/frames.hpp"
#include "tailsim/vehicle.hpp"

namespace tailsim {

struct FlatInput {
  Vec3d a{Vec3d::Zero()};    // m/s^2
  Vec3d j{Vec3d::Zero()};    // m/s^3
  Vec3d v{Vec3d::Zero()};    // m/s
  double psi{0};
  double psi_dot{0};
  Vec3d v_w{Vec3d::Zero()};
  Vec3d v_w_dot{Vec3d::Zero()};
  /// Elevon sum delta1 + delta2 (rad).
  double delta{0};
  /// Thrust-weighted elevon sum 2(d1 w1^2 + d2 w2^2)/(w1^2 + w2^2) used in the c_x3
  /// term; falls back to `delta` (exact when w1 = w2).
  std::optional<double> delta_thrust;

  double delta_cx3() const { return delta_thrust.value_or(delta); }
};

struct AttitudeThrust {
  double phi{0};
  double theta{0};
  Quatd q{Quatd::Identity()};
  /// tau = c_z2 (w1^2 + w2^2), non-positive for physical propeller speeds.
  double tau{0};
};

/// Attitude and specific thrust for the specific force f = a - g.
/// `current_b_y` selects the roll branch (b_y . R_phi i_y > 0). Without `current_b_z`
/// the pitch branch makes tau / c_z2 >= 0; with it, the branch keeping b_z on the same
/// side is used and tau may come out positive (no thrust can realize it).
/// Throws DegenerateError when the roll or pitch atan2 arguments both vanish.
AttitudeThrust flat_to_attitude_thrust(const FlatInput& in, const Vec3d& current_b_y, const ModelCoefficients& c,
                                       const std::optional<Vec3d>& current_b_z = std::nullopt);

/// Body angular rate consistent with the flat output derivatives.
/// Throws DegenerateError when a denominator drops below 1e-12.
Vec3d flat_to_rates(const FlatInput& in, const AttitudeThrust& at, const ModelCoefficients& c);

/// Propeller speeds and elevon deflections that realize tau and the specific moment m.
/// Throws InfeasibleError for a negative radicand and DegenerateError when the
/// elevon system is singular.
ControlInput recover_actuators(double tau, const Vec3d& m, const Vec3d& va_body, const ModelCoefficients& c);

struct YawReference {
  double psi{0};
  double psi_dot{0};
  bool held{false};  // horizontal airspeed too small, fallback used
};

/// Coordinated-flight heading of v_a and its rate. Below 0.5 m/s horizontal
/// airspeed, returns `fallback_psi` with zero rate.
YawReference yaw_reference(const Vec3d& va, const Vec3d& va_dot, double fallback_psi);

inline constexpr double kYawMinAirspeed = 0.5;

/// Heading, attitude and body rate for a motion (v, a, j) of the flat output.
struct Feedforward {
  YawReference yaw;
  AttitudeThrust attitude;
  Vec3d omega{Vec3d::Zero()};
};

/// Elevon sums and the roll-branch axis come from the running controller.
Feedforward flat_feedforward(const Vec3d& v, const Vec3d& a, const Vec3d& j, const Vec3d& v_w, const Vec3d& v_w_dot,
                             double delta, std::optional<double> delta_thrust, const Vec3d& current_b_y,
                             double psi_fallback, const ModelCoefficients& c);

}  // namespace tailsim
