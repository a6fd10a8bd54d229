#pragma once

// INDI acceleration and angular-acceleration loops, the quaternion PD
// attitude law, and the matched low-pass filter bank feeding them.

#include <array>
#include <cmath>
#include <optional>

#include <Eigen/Core>

#include "tailsim/flatness.hpp"
#include "tailsim/vehicle.hpp"

namespace tailsim {

/// Second-order Butterworth low-pass, bilinear transform with prewarping.
/// Direct form II transposed over N parallel channels.
template <int N>
class Butterworth2 {
 public:
  using Vec = Eigen::Matrix<double, N, 1>;

  Butterworth2() = default;
  Butterworth2(double cutoff, double sample_rate) {
    const double k = std::tan(cutoff / (2.0 * sample_rate));
    const double k2 = k * k;
    const double norm = 1.0 / (1.0 + std::sqrt(2.0) * k + k2);
    b0_ = k2 * norm;
    b1_ = 2.0 * b0_;
    b2_ = b0_;
    a1_ = 2.0 * (k2 - 1.0) * norm;
    a2_ = (1.0 - std::sqrt(2.0) * k + k2) * norm;
  }

  /// Set the internal state to the steady state of a constant input x.
  void reset(const Vec& x) {
    s1_ = x - b0_ * x;  // y = x at steady state
    s2_ = b2_ * x - a2_ * x;
    y_ = x;
  }

  const Vec& update(const Vec& x) {
    y_ = b0_ * x + s1_;
    s1_ = b1_ * x - a1_ * y_ + s2_;
    s2_ = b2_ * x - a2_ * y_;
    return y_;
  }

  const Vec& value() const { return y_; }
  double dc_gain() const { return (b0_ + b1_ + b2_) / (1.0 + a1_ + a2_); }
  std::array<double, 5> coefficients() const { return {b0_, b1_, b2_, a1_, a2_}; }

 private:
  double b0_{1}, b1_{0}, b2_{0}, a1_{0}, a2_{0};
  Vec s1_{Vec::Zero()}, s2_{Vec::Zero()}, y_{Vec::Zero()};
};

/// Phase-matched filters on every signal entering the incremental laws.
struct IndiFilterBank {
  Butterworth2<3> accel;        // measured acceleration
  Butterworth2<3> omega_dot;    // backward difference of the body rate
  Butterworth2<3> force;        // model specific force, inertial frame
  Butterworth2<3> moment;       // model specific moment, body frame
  Butterworth2<4> input;        // applied actuator positions

  Vec3d last_omega{Vec3d::Zero()};
  double dt{0.002};

  IndiFilterBank() = default;
  IndiFilterBank(double cutoff, double sample_rate);

  void reset(const Vec3d& accel0, const Vec3d& omega0, const Vec3d& force0, const Vec3d& moment0,
             const ControlInput& u0);
};

struct AttitudeGains {
  Vec3d kq{Vec3d::Constant(400.0)};
  Vec3d komega{Vec3d::Constant(28.0)};
};

/// f_c = (a_c - a_f) + f_f.
inline Vec3d indi_accel(const Vec3d& a_c, const Vec3d& a_f, const Vec3d& f_f) { return (a_c - a_f) + f_f; }

/// Omega_dot_c = -K_q q_e,v - K_Omega (Omega - Omega_ff).
Vec3d attitude_pd(const Quatd& q_e, const Vec3d& omega, const Vec3d& omega_ff, const AttitudeGains& g);

/// m_c = (Omega_dot_c - Omega_dot_f) + m_f.
inline Vec3d indi_moment(const Vec3d& omega_dot_c, const Vec3d& omega_dot_f, const Vec3d& m_f) {
  return (omega_dot_c - omega_dot_f) + m_f;
}

/// Attitude error used by the PD law: the canonical rotation from the current
/// to the commanded attitude expressed with inertial-to-body quaternions.
Quatd attitude_error(const Quatd& q_cmd, const Quatd& q);

enum class FeedforwardSource {
  reference,  // rates of the reference (or guiding-point) motion
  command,    // rates of the commanded motion: measured v, a = f_c + g, reference jerk
};

struct ControllerParams {
  AttitudeGains gains;
  double cutoff{50.0};     // rad/s
  double rate_hz{500.0};
  FeedforwardSource ff_source{FeedforwardSource::command};
  /// first-order low-pass (rad/s) on the thrust-weighted elevon deflection seen by the attitude transform
  double elevon_force_cutoff{1.0};
  ActuatorLimits limits;
};

struct Measurement {
  VehicleState x;
  Vec3d accel{Vec3d::Zero()};          // inertial acceleration from the IMU
  ControlInput applied;                // actuator positions
  Vec3d wind_estimate{Vec3d::Zero()};  // mean-wind estimate
};

struct ControlTarget {
  Vec3d a_c{Vec3d::Zero()};
  /// Reference flat motion (trajectory point or guiding point).
  Vec3d v_ref{Vec3d::Zero()};
  Vec3d a_ref{Vec3d::Zero()};
  Vec3d j_ref{Vec3d::Zero()};
  double psi{0};
  double psi_dot{0};
};

struct ControlDiagnostics {
  Vec3d f_c{Vec3d::Zero()};
  Vec3d a_f{Vec3d::Zero()};  // filtered measured acceleration
  Vec3d f_f{Vec3d::Zero()};  // filtered model specific force
  Quatd q_c{Quatd::Identity()};
  double tau{0};
  Vec3d omega_ff{Vec3d::Zero()};
  Vec3d omega_dot_c{Vec3d::Zero()};
  Vec3d m_c{Vec3d::Zero()};
  bool held{false};      // previous input reused after a transform failure
  bool clipped{false};   // roll moment clipped to keep propeller speeds real
};

/// Full cascade: INDI acceleration -> flatness attitude -> PD -> INDI moment -> actuators.
class Controller {
 public:
  Controller(const ControllerParams& params, const ModelCoefficients& model);

  /// Warm the filters with a consistent equilibrium.
  void reset(const Measurement& m0);

  ControlInput step(const ControlTarget& target, const Measurement& meas);

  const ControlDiagnostics& diagnostics() const { return diag_; }
  const IndiFilterBank& filters() const { return bank_; }
  const ModelCoefficients& model() const { return model_; }

 private:
  void update_filters(const Measurement& meas);

  ControllerParams params_;
  ModelCoefficients model_;  // simplified set used for inversion and INDI model terms
  IndiFilterBank bank_;
  ControlInput last_u_;
  Vec3d b_y_{Vec3d::UnitY()};
  Vec3d b_z_{Vec3d::UnitZ()};
  ControlDiagnostics diag_;
  double delta_slow_{0};
  double elevon_force_alpha_{1};
};

/// Model specific force in the inertial frame for the actual attitude and input.
Vec3d model_force_inertial(const VehicleState& x, const ControlInput& u, const Vec3d& wind,
                           const ModelCoefficients& c);
Vec3d model_moment(const VehicleState& x, const ControlInput& u, const Vec3d& wind, const ModelCoefficients& c);

}  // namespace tailsim
