#pragma once

// phi-theory force and moment model of a two-motor, two-elevon tailsitter and
// its rigid-body equations of motion.

#include <array>

#include <Eigen/Core>

#include "tailsim/frames.hpp"

namespace tailsim {

/// Aerodynamic/propulsive coefficients, inertia-normalized. Units follow the
/// identified Cyclone model: c_* give specific force (m/s^2), mu_* give
/// specific moment (rad/s^2).
struct ModelCoefficients {
  double cx1{0}, cx2{0}, cx3{0};
  double cy1{0};
  double cz1{0}, cz2{0};
  double mux1{0}, mux2{0};
  double muy1{0}, muy2{0}, muy3{0}, muy4{0};
  double muz1{0}, muz2{0}, muz3{0};
  /// Diagonal of J (kg m^2); only enters the gyroscopic term.
  Vec3d inertia{0.01, 0.02, 0.03};

  /// Identified Cyclone tailsitter coefficients.
  static ModelCoefficients cyclone();

  /// Copy with the terms the flatness transform neglects set to zero
  /// (cy1, mux2, muy3, muy4).
  ModelCoefficients simplified() const;

  /// Throws InvalidInputError when cz2 >= 0, mux1 <= 0, or anything is non-finite.
  void validate() const;
};

/// Elevon deflections (rad) and propeller speeds (rad/s), index 0 = left/1, 1 = right/2.
struct ControlInput {
  double elevon1{0};
  double elevon2{0};
  double rotor1{0};
  double rotor2{0};

  Eigen::Vector4d as_vector() const { return {elevon1, elevon2, rotor1, rotor2}; }
  static ControlInput from_vector(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
};

struct VehicleState {
  Vec3d p{Vec3d::Zero()};
  Vec3d v{Vec3d::Zero()};
  Quatd q{Quatd::Identity()};
  Vec3d omega{Vec3d::Zero()};
};

struct VehicleStateDot {
  Vec3d p_dot{Vec3d::Zero()};
  Vec3d v_dot{Vec3d::Zero()};
  Eigen::Vector4d q_dot{Eigen::Vector4d::Zero()};  // (w, x, y, z)
  Vec3d omega_dot{Vec3d::Zero()};
};

/// Net specific force in the body frame.
template <typename Scalar>
Vec3<Scalar> specific_force_body(const Vec3<Scalar>& va_b, const Scalar& d1, const Scalar& d2,
                                 const Scalar& w1, const Scalar& w2, const ModelCoefficients& c) {
  const Scalar speed = va_b.norm();
  const Scalar w1s = w1 * w1;
  const Scalar w2s = w2 * w2;
  Vec3<Scalar> f;
  f.x() = c.cx1 * speed * va_b.x() + c.cx2 * (d1 + d2) * speed * va_b.z() + c.cx3 * (d1 * w1s + d2 * w2s);
  f.y() = c.cy1 * speed * va_b.y();
  f.z() = c.cz1 * speed * va_b.z() + c.cz2 * (w1s + w2s);
  return f;
}

inline Vec3d specific_force_body(const Vec3d& va_b, const ControlInput& u, const ModelCoefficients& c) {
  return specific_force_body<double>(va_b, u.elevon1, u.elevon2, u.rotor1, u.rotor2, c);
}

/// Inertia-normalized control moment m = J^-1 M in the body frame.
template <typename Scalar>
Vec3<Scalar> specific_moment_body(const Vec3<Scalar>& va_b, const Scalar& d1, const Scalar& d2,
                                  const Scalar& w1, const Scalar& w2, const Scalar& d1_acc,
                                  const Scalar& d2_acc, const ModelCoefficients& c) {
  const Scalar speed = va_b.norm();
  const Scalar w1s = w1 * w1;
  const Scalar w2s = w2 * w2;
  Vec3<Scalar> m;
  m.x() = c.mux1 * (w1s - w2s) + c.mux2 * speed * va_b.y();
  m.y() = c.muy1 * (d1 * w1s + d2 * w2s) + c.muy2 * (d1 + d2) * speed * va_b.z() +
          c.muy3 * speed * va_b.x() + c.muy4 * (d1_acc + d2_acc);
  m.z() = c.muz1 * (d1 * w1s - d2 * w2s) + c.muz2 * (d1 - d2) * speed * va_b.z() + c.muz3 * (w1s - w2s);
  return m;
}

inline Vec3d specific_moment_body(const Vec3d& va_b, const ControlInput& u, const Eigen::Vector2d& elevon_accel,
                                  const ModelCoefficients& c) {
  return specific_moment_body<double>(va_b, u.elevon1, u.elevon2, u.rotor1, u.rotor2, elevon_accel[0],
                                      elevon_accel[1], c);
}

/// m_cor = J^-1 (Omega x J Omega).
Vec3d gyroscopic_term(const Vec3d& omega, const Vec3d& inertia);

/// Rigid-body state derivative. `wind` is the inertial air-mass velocity.
VehicleStateDot state_derivative(const VehicleState& x, const ControlInput& u, const Eigen::Vector2d& elevon_accel,
                                 const Vec3d& wind, const ModelCoefficients& c);

// ---------------------------------------------------------------------------
// Actuators

struct ActuatorLimits {
  double elevon_max{0.6};
  double rotor_min{0.0};
  double rotor_max{1500.0};
};

struct ActuatorParams {
  double servo_wn{60.0};
  double servo_zeta{0.8};
  double motor_tau{0.03};
  ActuatorLimits limits{};
};

/// Second-order elevon servos and first-order motors.
struct ActuatorState {
  Eigen::Vector2d elevon{Eigen::Vector2d::Zero()};
  Eigen::Vector2d elevon_rate{Eigen::Vector2d::Zero()};
  Eigen::Vector2d rotor{Eigen::Vector2d::Zero()};

  ControlInput applied() const { return {elevon[0], elevon[1], rotor[0], rotor[1]}; }
};

struct ActuatorStateDot {
  Eigen::Vector2d elevon_rate{Eigen::Vector2d::Zero()};
  Eigen::Vector2d elevon_accel{Eigen::Vector2d::Zero()};
  Eigen::Vector2d rotor_rate{Eigen::Vector2d::Zero()};
};

ControlInput saturate(const ControlInput& u, const ActuatorLimits& lim);

/// Actuator derivative for a (saturated) command.
ActuatorStateDot actuator_derivative(const ActuatorState& a, const ControlInput& cmd, const ActuatorParams& p);

/// Propeller speed that balances gravity in hover with zero airflow.
double hover_rotor_speed(const ModelCoefficients& c);

}  // namespace tailsim
