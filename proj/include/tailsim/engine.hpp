#pragma once

// Closed-loop simulation: plant, actuators, turbulence, guidance and the
// inner loop, stepped with a fixed-step RK4 and a zero-order-hold controller.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tailsim/gvf_guidance.hpp"
#include "tailsim/inner_loop.hpp"
#include "tailsim/speed_profile.hpp"
#include "tailsim/traj_guidance.hpp"
#include "tailsim/wind.hpp"

namespace tailsim {

enum class GuidanceKind { gvf, traj };

const char* to_string(GuidanceKind k);

struct SimConfig {
  GuidanceKind guidance{GuidanceKind::gvf};
  ParametricPath path{CirclePath{}};
  SpeedProfile speed;

  WindCondition wind;
  WindEstimateError wind_error;

  double k_eff{0.5};
  double k_v{5.0};
  /// Path parameter of the nominal start point; the vehicle starts at f(w_start) + offset.
  double w_start{0.0};
  Vec3d init_offset{Vec3d::Zero()};
  double sat_a{10.0};
  /// GVF path parameter scale; 0 picks the rms tangent norm so that |f'| is about 1.
  double gvf_param_scale{0.0};

  ControllerParams control;
  ActuatorParams actuators;
  ModelCoefficients model{ModelCoefficients::cyclone()};

  double accel_noise{0.05};  // m/s^2, 1-sigma
  std::uint64_t seed{1};

  double duration{60.0};
  double physics_hz{2000.0};

  void validate() const;
};

struct LogRow {
  double t{0};
  Vec3d p, v;
  Quatd q;
  Vec3d omega;
  ControlInput u;     // command sent to the actuators
  Vec3d a_c;
  Vec3d p_ref;        // guiding point or trajectory point
  double e_norm{0};
  Vec3d wind;         // true air-mass velocity
  Vec3d accel;        // true inertial acceleration
  double w{0};
  double s_r{0};
  Vec3d omega_ff;
  Vec3d j_ref;
  ControlDiagnostics ctrl;
};

using SimLog = std::vector<LogRow>;

struct RunResult {
  SimLog log;
  bool diverged{false};
  std::string message;
  double k_gain{0};  // GVF gain used for the run
};

/// Packed continuous state integrated by RK4.
struct PlantState {
  VehicleState vehicle;
  ActuatorState act;
  double w{0};
  Eigen::Vector3d speed{Eigen::Vector3d::Zero()};
};

class Simulation {
 public:
  explicit Simulation(SimConfig cfg);

  /// Integrate until cfg.duration or divergence.
  RunResult run();

  const GvfField& field() const { return field_; }
  const TimedTrajectory& trajectory() const { return traj_; }
  double initial_w() const { return w0_; }
  double gvf_param_scale() const { return w_scale_; }

 private:
  using Packed = Eigen::Matrix<double, 23, 1>;

  Packed pack(const PlantState& s) const;
  PlantState unpack(const Packed& x) const;
  Packed derivative(const Packed& x, const ControlInput& u_cmd, const Vec3d& wind) const;
  Vec3d true_accel(const PlantState& s, const Vec3d& wind) const;

  SimConfig cfg_;
  GvfField field_;
  TimedTrajectory traj_;
  double w0_{0};
  double w_scale_{1};
};

/// Convenience wrapper.
RunResult run_simulation(const SimConfig& cfg);

}  // namespace tailsim
