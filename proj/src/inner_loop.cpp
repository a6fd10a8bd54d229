#include "tailsim/inner_loop.hpp"

#include <algorithm>
#include <cmath>

namespace tailsim {

IndiFilterBank::IndiFilterBank(double cutoff, double sample_rate)
    : accel(cutoff, sample_rate),
      omega_dot(cutoff, sample_rate),
      force(cutoff, sample_rate),
      moment(cutoff, sample_rate),
      input(cutoff, sample_rate),
      dt(1.0 / sample_rate) {
  if (!(cutoff > 0.0) || !(sample_rate > 0.0) || cutoff >= M_PI * sample_rate) {
    throw InvalidInputError("filter cutoff must be positive and below Nyquist");
  }
}

void IndiFilterBank::reset(const Vec3d& accel0, const Vec3d& omega0, const Vec3d& force0, const Vec3d& moment0,
                           const ControlInput& u0) {
  accel.reset(accel0);
  omega_dot.reset(Vec3d::Zero());
  force.reset(force0);
  moment.reset(moment0);
  input.reset(u0.as_vector());
  last_omega = omega0;
}

Vec3d attitude_pd(const Quatd& q_e, const Vec3d& omega, const Vec3d& omega_ff, const AttitudeGains& g) {
  return -g.kq.cwiseProduct(q_e.vec()) - g.komega.cwiseProduct(omega - omega_ff);
}

Quatd attitude_error(const Quatd& q_cmd, const Quatd& q) { return quat_error<double>(q_cmd.conjugate(), q.conjugate()); }

Vec3d model_force_inertial(const VehicleState& x, const ControlInput& u, const Vec3d& wind,
                           const ModelCoefficients& c) {
  const Mat3d r = x.q.toRotationMatrix();
  return r * specific_force_body(r.transpose() * (x.v - wind), u, c);
}

Vec3d model_moment(const VehicleState& x, const ControlInput& u, const Vec3d& wind, const ModelCoefficients& c) {
  const Mat3d r = x.q.toRotationMatrix();
  return specific_moment_body(r.transpose() * (x.v - wind), u, Eigen::Vector2d::Zero(), c);
}

Controller::Controller(const ControllerParams& params, const ModelCoefficients& model)
    : params_(params), model_(model.simplified()), bank_(params.cutoff, params.rate_hz) {
  model_.validate();
  if ((params.gains.kq.array() <= 0.0).any() || (params.gains.komega.array() <= 0.0).any()) {
    throw InvalidInputError("attitude gains must be positive");
  }
  if (!(params.elevon_force_cutoff > 0.0)) throw InvalidInputError("elevon force cutoff must be positive");
  elevon_force_alpha_ = 1.0 - std::exp(-params.elevon_force_cutoff / params.rate_hz);
}

void Controller::reset(const Measurement& m0) {
  bank_.reset(m0.accel, m0.x.omega, model_force_inertial(m0.x, m0.applied, m0.wind_estimate, model_),
              model_moment(m0.x, m0.applied, m0.wind_estimate, model_), m0.applied);
  last_u_ = m0.applied;
  delta_slow_ = m0.applied.elevon1 + m0.applied.elevon2;
  b_y_ = m0.x.q * Vec3d::UnitY();
  b_z_ = m0.x.q * Vec3d::UnitZ();
  diag_ = {};
  diag_.q_c = m0.x.q;
}

void Controller::update_filters(const Measurement& meas) {
  bank_.accel.update(meas.accel);
  bank_.omega_dot.update((meas.x.omega - bank_.last_omega) / bank_.dt);
  bank_.last_omega = meas.x.omega;
  bank_.force.update(model_force_inertial(meas.x, meas.applied, meas.wind_estimate, model_));
  bank_.moment.update(model_moment(meas.x, meas.applied, meas.wind_estimate, model_));
  bank_.input.update(meas.applied.as_vector());
}

ControlInput Controller::step(const ControlTarget& target, const Measurement& meas) {
  update_filters(meas);
  diag_.held = false;
  diag_.clipped = false;

  const Eigen::Vector4d uf = bank_.input.value();
  const double delta = uf[0] + uf[1];
  const double w1s = uf[2] * uf[2];
  const double w2s = uf[3] * uf[3];
  const double delta_thrust = (w1s + w2s) > 1e-9 ? 2.0 * (uf[0] * w1s + uf[1] * w2s) / (w1s + w2s) : delta;

  const Vec3d f_c = indi_accel(target.a_c, bank_.accel.value(), bank_.force.value());
  diag_.f_c = f_c;
  diag_.a_f = bank_.accel.value();
  diag_.f_f = bank_.force.value();

  try {
    FlatInput cmd;
    cmd.a = f_c + gravity_ned();
    cmd.j = target.j_ref;
    cmd.v = meas.x.v;
    cmd.psi = target.psi;
    cmd.psi_dot = target.psi_dot;
    cmd.v_w = meas.wind_estimate;
    cmd.delta = delta;
    delta_slow_ += elevon_force_alpha_ * (delta_thrust - delta_slow_);
    cmd.delta_thrust = delta_slow_;
    const AttitudeThrust at = flat_to_attitude_thrust(cmd, b_y_, model_, b_z_);

    Vec3d omega_ff;
    if (params_.ff_source == FeedforwardSource::command) {
      omega_ff = flat_to_rates(cmd, at, model_);
    } else {
      FlatInput ref = cmd;
      ref.a = target.a_ref;
      ref.v = target.v_ref;
      const AttitudeThrust at_ref = flat_to_attitude_thrust(ref, b_y_, model_, b_z_);
      omega_ff = flat_to_rates(ref, at_ref, model_);
    }

    const Quatd q_e = attitude_error(at.q, meas.x.q);
    const Vec3d omega_dot_c = attitude_pd(q_e, meas.x.omega, omega_ff, params_.gains);
    const Vec3d m_c = indi_moment(omega_dot_c, bank_.omega_dot.value(), bank_.moment.value());

    const Vec3d va_b = meas.x.q.toRotationMatrix().transpose() * (meas.x.v - meas.wind_estimate);
    ControlInput u;
    try {
      u = recover_actuators(at.tau, m_c, va_b, model_);
    } catch (const InfeasibleError&) {
      // thrust has priority over roll moment
      const double e1 = std::max(at.tau / model_.cz2, 0.0);
      Vec3d m_clip = m_c;
      m_clip.x() = std::clamp(m_c.x(), -e1 * model_.mux1, e1 * model_.mux1);
      u = recover_actuators(std::min(at.tau, 0.0), m_clip, va_b, model_);
      diag_.clipped = true;
    }
    u = saturate(u, params_.limits);

    diag_.q_c = at.q;
    diag_.tau = at.tau;
    diag_.omega_ff = omega_ff;
    diag_.omega_dot_c = omega_dot_c;
    diag_.m_c = m_c;
    b_y_ = at.q * Vec3d::UnitY();
    b_z_ = at.q * Vec3d::UnitZ();
    last_u_ = u;
  } catch (const DegenerateError&) {
    diag_.held = true;
  } catch (const InfeasibleError&) {
    diag_.held = true;
  }
  return last_u_;
}

}  // namespace tailsim
