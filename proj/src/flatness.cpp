#include "tailsim/flatness.hpp"

#include <cmath>

namespace tailsim {

namespace {

constexpr double kDenMin = 1e-12;

struct PhiFrame {
  Mat3d r_i_phi;  // inertial -> intermediate (after yaw and roll)
  Vec3d f_phi;
  Vec3d va_phi;
  double va_norm;
};

PhiFrame phi_frame(const FlatInput& in, double phi) {
  PhiFrame fr;
  fr.r_i_phi = (rot_z(in.psi) * rot_x(phi)).transpose();
  const Vec3d f = in.a - gravity_ned();
  const Vec3d va = in.v - in.v_w;
  fr.f_phi = fr.r_i_phi * f;
  fr.va_phi = fr.r_i_phi * va;
  fr.va_norm = va.norm();
  return fr;
}

struct Sigma {
  double x;
  double z;
};

Sigma sigma_terms(const Vec3d& f_phi, const Vec3d& va_phi, double va_norm, double delta, double delta3,
                  const ModelCoefficients& c) {
  const double k3 = c.cx3 / (2.0 * c.cz2) * delta3;
  Sigma s;
  s.x = f_phi.x() - c.cx1 * va_norm * va_phi.x() - c.cx2 * delta * va_norm * va_phi.z() -
        k3 * (f_phi.z() - c.cz1 * va_norm * va_phi.z());
  s.z = f_phi.z() - c.cx1 * va_norm * va_phi.z() + c.cx2 * delta * va_norm * va_phi.x() +
        k3 * (f_phi.x() - c.cz1 * va_norm * va_phi.x());
  return s;
}

double thrust(double theta, const PhiFrame& fr, const ModelCoefficients& c) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  return st * fr.f_phi.x() + ct * fr.f_phi.z() - c.cz1 * fr.va_norm * (st * fr.va_phi.x() + ct * fr.va_phi.z());
}

}  // namespace

AttitudeThrust flat_to_attitude_thrust(const FlatInput& in, const Vec3d& current_b_y, const ModelCoefficients& c,
                                       const std::optional<Vec3d>& current_b_z) {
  const Vec3d f = in.a - gravity_ned();
  const double sp = std::sin(in.psi);
  const double cp = std::cos(in.psi);
  const double beta_x = -sp * f.x() + cp * f.y();
  const double beta_z = f.z();
  if (beta_x * beta_x + beta_z * beta_z < kDenMin) {
    throw DegenerateError("flatness: roll undefined (beta_x = beta_z = 0)");
  }

  double phi = -std::atan2(beta_x, beta_z);
  const Vec3d y_axis = rot_z(in.psi) * rot_x(phi) * Vec3d::UnitY();
  if (current_b_y.dot(y_axis) < 0.0) phi += M_PI;
  phi = wrap_pi(phi);

  const PhiFrame fr = phi_frame(in, phi);
  const Sigma s = sigma_terms(fr.f_phi, fr.va_phi, fr.va_norm, in.delta, in.delta_cx3(), c);
  if (s.x * s.x + s.z * s.z < kDenMin) {
    throw DegenerateError("flatness: pitch undefined (sigma_x = sigma_z = 0)");
  }
  double theta = std::atan2(s.x, s.z);
  double tau = thrust(theta, fr, c);
  if (current_b_z) {
    const Vec3d z_axis = rot_z(in.psi) * rot_x(phi) * rot_y(theta) * Vec3d::UnitZ();
    if (current_b_z->dot(z_axis) < 0.0) {
      theta = wrap_pi(theta + M_PI);
      tau = -tau;
    }
  } else if (tau / c.cz2 < 0.0) {
    // propeller speeds need tau / c_z2 >= 0
    theta = wrap_pi(theta + M_PI);
    tau = -tau;
  }

  AttitudeThrust out;
  out.phi = phi;
  out.theta = theta;
  out.tau = tau;
  out.q = euler_zxy_to_quat(EulerZXY<double>{in.psi, phi, theta});
  return out;
}

Vec3d flat_to_rates(const FlatInput& in, const AttitudeThrust& at, const ModelCoefficients& c) {
  const Vec3d f = in.a - gravity_ned();
  const Vec3d& fd = in.j;
  const double sp = std::sin(in.psi);
  const double cp = std::cos(in.psi);
  const double beta_x = -sp * f.x() + cp * f.y();
  const double beta_z = f.z();
  const double beta_x_dot = -cp * in.psi_dot * f.x() - sp * fd.x() - sp * in.psi_dot * f.y() + cp * fd.y();
  const double beta_z_dot = fd.z();
  const double den_b = beta_x * beta_x + beta_z * beta_z;
  if (den_b < kDenMin) throw DegenerateError("flatness: roll rate denominator vanishes");
  const double phi_dot = -(beta_x_dot * beta_z - beta_x * beta_z_dot) / den_b;

  const PhiFrame fr = phi_frame(in, at.phi);
  const Vec3d w_phi = rot_x(at.phi).transpose() * Vec3d(0.0, 0.0, in.psi_dot) + Vec3d(phi_dot, 0.0, 0.0);
  const Vec3d f_phi_dot = -w_phi.cross(fr.f_phi) + fr.r_i_phi * fd;
  const Vec3d va = in.v - in.v_w;
  const Vec3d va_dot = in.a - in.v_w_dot;
  const Vec3d va_phi_dot = -w_phi.cross(fr.va_phi) + fr.r_i_phi * va_dot;
  const double n = fr.va_norm;
  const double n_dot = n < 1e-6 ? 0.0 : va.dot(va_dot) / n;

  const double d = in.delta;
  const double k3 = c.cx3 / (2.0 * c.cz2) * in.delta_cx3();
  // d/dt (|v_a| v_a^phi)
  const Vec3d nv_dot = n_dot * fr.va_phi + n * va_phi_dot;

  const Sigma s = sigma_terms(fr.f_phi, fr.va_phi, n, d, in.delta_cx3(), c);
  const double sx_dot = f_phi_dot.x() - c.cx1 * nv_dot.x() - c.cx2 * d * nv_dot.z() -
                        k3 * (f_phi_dot.z() - c.cz1 * nv_dot.z());
  const double sz_dot = f_phi_dot.z() - c.cx1 * nv_dot.z() + c.cx2 * d * nv_dot.x() +
                        k3 * (f_phi_dot.x() - c.cz1 * nv_dot.x());
  const double den_s = s.x * s.x + s.z * s.z;
  if (den_s < kDenMin) throw DegenerateError("flatness: pitch rate denominator vanishes");
  const double theta_dot = (sx_dot * s.z - s.x * sz_dot) / den_s;

  const Mat3d ry_t = rot_y(at.theta).transpose();
  return Vec3d(0.0, theta_dot, 0.0) + ry_t * Vec3d(phi_dot, 0.0, 0.0) +
         ry_t * rot_x(at.phi).transpose() * Vec3d(0.0, 0.0, in.psi_dot);
}

ControlInput recover_actuators(double tau, const Vec3d& m, const Vec3d& va_body, const ModelCoefficients& c) {
  const double e1 = tau / c.cz2;
  const double e2 = m.x() / c.mux1;
  const double r1 = 0.5 * (e1 + e2);
  const double r2 = 0.5 * (e1 - e2);
  if (r1 < 0.0 || r2 < 0.0) throw InfeasibleError("recover_actuators: negative propeller speed radicand");
  const double w1s = r1;
  const double w2s = r2;

  const double air = va_body.norm() * va_body.z();
  const double eta_y = m.y();
  const double eta_z = m.z() - c.muz3 * (w1s - w2s);
  const double z1 = c.muz1 * w1s + c.muz2 * air;
  const double z2 = -c.muz1 * w2s - c.muz2 * air;
  const double z3 = c.muy1 * w1s + c.muy2 * air;
  const double z4 = c.muy1 * w2s + c.muy2 * air;
  const double det = z1 * z4 - z2 * z3;
  if (std::abs(z1) > 0.0 ? std::abs(det / z1) < 1e-12 : std::abs(det) < 1e-12) {
    throw DegenerateError("recover_actuators: elevon authority is singular");
  }

  ControlInput u;
  u.rotor1 = std::sqrt(w1s);
  u.rotor2 = std::sqrt(w2s);
  u.elevon1 = (eta_z * z4 - z2 * eta_y) / det;
  u.elevon2 = (z1 * eta_y - z3 * eta_z) / det;
  return u;
}

YawReference yaw_reference(const Vec3d& va, const Vec3d& va_dot, double fallback_psi) {
  const double h2 = va.x() * va.x() + va.y() * va.y();
  if (h2 < kYawMinAirspeed * kYawMinAirspeed) return {fallback_psi, 0.0, true};
  YawReference y;
  y.psi = std::atan2(va.y(), va.x());
  y.psi_dot = (va_dot.y() * va.x() - va.y() * va_dot.x()) / h2;
  return y;
}

Feedforward flat_feedforward(const Vec3d& v, const Vec3d& a, const Vec3d& j, const Vec3d& v_w, const Vec3d& v_w_dot,
                             double delta, std::optional<double> delta_thrust, const Vec3d& current_b_y,
                             double psi_fallback, const ModelCoefficients& c) {
  Feedforward ff;
  ff.yaw = yaw_reference(v - v_w, a - v_w_dot, psi_fallback);
  FlatInput in;
  in.a = a;
  in.j = j;
  in.v = v;
  in.psi = ff.yaw.psi;
  in.psi_dot = ff.yaw.psi_dot;
  in.v_w = v_w;
  in.v_w_dot = v_w_dot;
  in.delta = delta;
  in.delta_thrust = delta_thrust;
  ff.attitude = flat_to_attitude_thrust(in, current_b_y, c);
  ff.omega = flat_to_rates(in, ff.attitude, c);
  return ff;
}

}  // namespace tailsim
