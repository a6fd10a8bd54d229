#include "tailsim/vehicle.hpp"

#include <algorithm>
#include <cmath>

namespace tailsim {

ModelCoefficients ModelCoefficients::cyclone() {
  ModelCoefficients c;
  c.cx1 = -1.44e1;
  c.cx2 = 6.83e-2;
  c.cx3 = -8.80e-6;
  c.cy1 = -8.41e-2;
  c.cz1 = -3.00e-2;
  c.cz2 = -7.35e-6;
  c.mux1 = 3.90e-5;
  c.mux2 = 3.71e-3;
  c.muy1 = -4.24e-5;
  c.muy2 = 2.53e-1;
  c.muy3 = -8.88e-2;
  c.muy4 = -7.68e-3;
  c.muz1 = -5.83e-5;
  c.muz2 = 3.44e-1;
  c.muz3 = -3.97e-6;
  c.inertia = Vec3d(0.01, 0.02, 0.03);
  return c;
}

ModelCoefficients ModelCoefficients::simplified() const {
  ModelCoefficients s = *this;
  s.cy1 = 0.0;
  s.mux2 = 0.0;
  s.muy3 = 0.0;
  s.muy4 = 0.0;
  return s;
}

void ModelCoefficients::validate() const {
  const double all[] = {cx1, cx2, cx3, cy1, cz1, cz2, mux1, mux2, muy1, muy2, muy3, muy4, muz1, muz2, muz3};
  for (double v : all) {
    if (!std::isfinite(v)) throw InvalidInputError("model coefficients must be finite");
  }
  if (!inertia.allFinite() || (inertia.array() <= 0.0).any()) {
    throw InvalidInputError("inertia diagonal must be positive");
  }
  if (!(cz2 < 0.0)) throw InvalidInputError("cz2 must be negative (thrust along -b_z)");
  if (!(mux1 > 0.0)) throw InvalidInputError("mux1 must be positive");
}

Vec3d gyroscopic_term(const Vec3d& omega, const Vec3d& inertia) {
  const Vec3d j_omega = inertia.cwiseProduct(omega);
  return omega.cross(j_omega).cwiseQuotient(inertia);
}

VehicleStateDot state_derivative(const VehicleState& x, const ControlInput& u, const Eigen::Vector2d& elevon_accel,
                                 const Vec3d& wind, const ModelCoefficients& c) {
  const Mat3d r = x.q.toRotationMatrix();
  const Vec3d va_b = r.transpose() * (x.v - wind);

  VehicleStateDot d;
  d.p_dot = x.v;
  d.v_dot = r * specific_force_body(va_b, u, c) + gravity_ned();
  d.q_dot = quat_rate<double>(x.q, x.omega);
  d.omega_dot = specific_moment_body(va_b, u, elevon_accel, c) - gyroscopic_term(x.omega, c.inertia);
  return d;
}

ControlInput saturate(const ControlInput& u, const ActuatorLimits& lim) {
  ControlInput s;
  s.elevon1 = std::clamp(u.elevon1, -lim.elevon_max, lim.elevon_max);
  s.elevon2 = std::clamp(u.elevon2, -lim.elevon_max, lim.elevon_max);
  s.rotor1 = std::clamp(u.rotor1, lim.rotor_min, lim.rotor_max);
  s.rotor2 = std::clamp(u.rotor2, lim.rotor_min, lim.rotor_max);
  return s;
}

ActuatorStateDot actuator_derivative(const ActuatorState& a, const ControlInput& cmd, const ActuatorParams& p) {
  const ControlInput s = saturate(cmd, p.limits);
  const Eigen::Vector2d elevon_cmd(s.elevon1, s.elevon2);
  const Eigen::Vector2d rotor_cmd(s.rotor1, s.rotor2);
  const double wn2 = p.servo_wn * p.servo_wn;

  ActuatorStateDot d;
  d.elevon_rate = a.elevon_rate;
  d.elevon_accel = wn2 * (elevon_cmd - a.elevon) - 2.0 * p.servo_zeta * p.servo_wn * a.elevon_rate;
  d.rotor_rate = (rotor_cmd - a.rotor) / p.motor_tau;
  return d;
}

double hover_rotor_speed(const ModelCoefficients& c) { return std::sqrt(kGravity / (-2.0 * c.cz2)); }

}  // namespace tailsim
