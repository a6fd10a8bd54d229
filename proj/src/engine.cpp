#include "tailsim/engine.hpp"

#include <cmath>
#include <random>

namespace tailsim {

const char* to_string(GuidanceKind k) { return k == GuidanceKind::gvf ? "gvf" : "traj"; }

void SimConfig::validate() const {
  model.validate();
  if (!(speed.final_speed > 0.0)) throw InvalidInputError("speed.vs must be positive");
  if (!(speed.zeta > 0.0 && speed.wn > 0.0 && speed.alpha > 0.0)) throw InvalidInputError("speed profile parameters must be positive");
  if (!(k_eff > 0.0) || !(k_v > 0.0)) throw InvalidInputError("guidance gains must be positive");
  if (!(sat_a > 0.0)) throw InvalidInputError("traj.sat_a must be positive");
  if (!(duration > 0.0)) throw InvalidInputError("sim.duration must be positive");
  if (!(control.rate_hz > 0.0) || !(physics_hz >= control.rate_hz)) {
    throw InvalidInputError("physics rate must be at least the control rate");
  }
  const double ratio = physics_hz / control.rate_hz;
  if (std::abs(ratio - std::round(ratio)) > 1e-9) throw InvalidInputError("physics rate must be a multiple of the control rate");
  if (!(accel_noise >= 0.0)) throw InvalidInputError("sensors.accel_noise must be non-negative");
  if (!(wind.speed >= 0.0)) throw InvalidInputError("wind.speed must be non-negative");
  if (!(gvf_param_scale >= 0.0)) throw InvalidInputError("gvf.param_scale must be non-negative");
  if (!init_offset.allFinite()) throw InvalidInputError("init.offset must be finite");
  const ActuatorLimits& lim = actuators.limits;
  if (!(lim.elevon_max > 0.0) || !(lim.rotor_min >= 0.0) || !(lim.rotor_max > lim.rotor_min)) {
    throw InvalidInputError("actuator limits must satisfy elevon_max > 0 and 0 <= rotor_min < rotor_max");
  }
  if (!(actuators.servo_wn > 0.0) || !(actuators.servo_zeta > 0.0) || !(actuators.motor_tau > 0.0)) {
    throw InvalidInputError("actuator dynamics parameters must be positive");
  }
}

Simulation::Simulation(SimConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const Vec3d p0 = cfg_.path.eval(cfg_.w_start, 0) + cfg_.init_offset;
  w0_ = nearest_parameter(cfg_.path, p0, cfg_.w_start - M_PI, cfg_.w_start + M_PI);

  const double rms = cfg_.path.mean_tangent_norm();
  w_scale_ = cfg_.gvf_param_scale > 0.0 ? cfg_.gvf_param_scale : rms;
  field_.path = w_scale_ == 1.0 ? cfg_.path : rescaled(cfg_.path, w_scale_);
  const double s_hat_nom = cfg_.speed.final_speed * w_scale_ / rms;
  field_.gain = tune_gain(Vec3d::Constant(cfg_.k_eff), s_hat_nom);

  if (cfg_.guidance == GuidanceKind::traj) {
    // traversal sense matches the vector field (decreasing w)
    traj_ = arc_length_reparam(cfg_.path, cfg_.speed, cfg_.duration + 1.0, 1.0 / cfg_.control.rate_hz, w0_, -1.0);
  }
}

Simulation::Packed Simulation::pack(const PlantState& s) const {
  Packed x;
  x.segment<3>(0) = s.vehicle.p;
  x.segment<3>(3) = s.vehicle.v;
  x.segment<4>(6) << s.vehicle.q.w(), s.vehicle.q.x(), s.vehicle.q.y(), s.vehicle.q.z();
  x.segment<3>(10) = s.vehicle.omega;
  x.segment<2>(13) = s.act.elevon;
  x.segment<2>(15) = s.act.elevon_rate;
  x.segment<2>(17) = s.act.rotor;
  x[19] = s.w;
  x.segment<3>(20) = s.speed;
  return x;
}

PlantState Simulation::unpack(const Packed& x) const {
  PlantState s;
  s.vehicle.p = x.segment<3>(0);
  s.vehicle.v = x.segment<3>(3);
  s.vehicle.q = Quatd(x[6], x[7], x[8], x[9]);
  s.vehicle.omega = x.segment<3>(10);
  s.act.elevon = x.segment<2>(13);
  s.act.elevon_rate = x.segment<2>(15);
  s.act.rotor = x.segment<2>(17);
  s.w = x[19];
  s.speed = x.segment<3>(20);
  return s;
}

Simulation::Packed Simulation::derivative(const Packed& x, const ControlInput& u_cmd, const Vec3d& wind) const {
  const PlantState s = unpack(x);
  const ActuatorStateDot ad = actuator_derivative(s.act, u_cmd, cfg_.actuators);
  // the quaternion is only normalized between steps; use it as is inside the stages
  VehicleState v = s.vehicle;
  const VehicleStateDot vd = state_derivative(v, s.act.applied(), ad.elevon_accel, wind, cfg_.model);

  Packed d;
  d.segment<3>(0) = vd.p_dot;
  d.segment<3>(3) = vd.v_dot;
  d.segment<4>(6) = vd.q_dot;
  d.segment<3>(10) = vd.omega_dot;
  d.segment<2>(13) = ad.elevon_rate;
  d.segment<2>(15) = ad.elevon_accel;
  d.segment<2>(17) = ad.rotor_rate;
  d[19] = cfg_.guidance == GuidanceKind::gvf ? gvf_w_dot(s.vehicle.p, s.w, s.speed[0], field_) : 0.0;
  d.segment<3>(20) = cfg_.speed.derivative(s.speed);
  return d;
}

Vec3d Simulation::true_accel(const PlantState& s, const Vec3d& wind) const {
  const Mat3d r = s.vehicle.q.toRotationMatrix();
  return r * specific_force_body(r.transpose() * (s.vehicle.v - wind), s.act.applied(), cfg_.model) + gravity_ned();
}

RunResult Simulation::run() {
  RunResult result;
  result.k_gain = field_.gain[0];

  const double dt_c = 1.0 / cfg_.control.rate_hz;
  const int sub = static_cast<int>(std::lround(cfg_.physics_hz / cfg_.control.rate_hz));
  const double h = dt_c / sub;
  const auto n_steps = static_cast<long>(std::floor(cfg_.duration * cfg_.control.rate_hz + 1e-9));

  const Vec3d f1 = cfg_.path.eval(w0_, 1);
  double psi_hold = std::atan2(-f1.y(), -f1.x());

  const Vec3d wind_mean = mean_wind(cfg_.wind);
  const Vec3d wind_est = estimated_mean_wind(wind_mean, cfg_.wind_error);

  PlantState s;
  s.vehicle.p = cfg_.path.eval(cfg_.w_start, 0) + cfg_.init_offset;
  s.w = w0_ * w_scale_;
  {
    // trimmed hover in the mean wind
    const YawReference yaw0 = yaw_reference(-wind_est, Vec3d::Zero(), psi_hold);
    psi_hold = yaw0.psi;
    FlatInput trim;
    trim.psi = psi_hold;
    trim.v_w = wind_mean;
    const AttitudeThrust at = flat_to_attitude_thrust(trim, Vec3d::UnitY(), cfg_.model.simplified());
    s.vehicle.q = at.q;
    s.act.rotor = Eigen::Vector2d::Constant(std::sqrt(at.tau / (2.0 * cfg_.model.cz2)));
  }

  const double altitude = std::max(-s.vehicle.p.z(), 1.0);
  DrydenGust gust(cfg_.wind, altitude, dt_c);
  Vec3d wind = wind_mean;

  std::mt19937_64 rng(cfg_.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  auto sensor_noise = [&]() -> Vec3d {
    if (cfg_.accel_noise == 0.0) return Vec3d::Zero();
    return Vec3d(noise(rng), noise(rng), noise(rng)) * cfg_.accel_noise;
  };

  Controller ctrl(cfg_.control, cfg_.model);
  Measurement meas;
  meas.x = s.vehicle;
  meas.applied = s.act.applied();
  meas.wind_estimate = wind_est;
  meas.accel = true_accel(s, wind);
  ctrl.reset(meas);

  const GuidanceKind kind = cfg_.guidance;
  const Vec3d kv = Vec3d::Constant(cfg_.k_v);
  const TrajGains tg = equivalent_gains(Vec3d::Constant(cfg_.k_eff), kv, cfg_.sat_a);

  Packed x = pack(s);
  result.log.reserve(static_cast<std::size_t>(n_steps) + 1);

  for (long k = 0; k <= n_steps; ++k) {
    const double t = k * dt_c;
    s = unpack(x);

    const Vec3d accel_true = true_accel(s, wind);
    meas.x = s.vehicle;
    meas.applied = s.act.applied();
    meas.accel = accel_true + sensor_noise();

    const SpeedSample sp{s.speed[0], s.speed[1], s.speed[2]};
    ControlTarget target;
    Vec3d p_ref;
    try {
      if (kind == GuidanceKind::gvf) {
        const GvfOutput g = gvf_evaluate(s.vehicle.p, s.vehicle.v, s.w, sp, field_, kv);
        target.a_c = g.a_c;
        target.v_ref = g.guide.v;
        target.a_ref = g.guide.a;
        target.j_ref = g.guide.j;
        p_ref = g.guide.p;
      } else {
        const TrajectorySample r = traj_.sample(t);
        target.a_c = traj_accel(s.vehicle.p, s.vehicle.v, r, tg);
        target.v_ref = r.v;
        target.a_ref = r.a;
        target.j_ref = r.j;
        p_ref = r.p;
      }
    } catch (const std::exception& e) {
      result.diverged = true;
      result.message = std::string("guidance failed: ") + e.what();
      break;
    }
    const YawReference yaw = yaw_reference(target.v_ref - wind_est, target.a_ref, psi_hold);
    psi_hold = yaw.psi;
    target.psi = yaw.psi;
    target.psi_dot = yaw.psi_dot;

    const ControlInput u = ctrl.step(target, meas);

    LogRow row;
    row.t = t;
    row.p = s.vehicle.p;
    row.v = s.vehicle.v;
    row.q = s.vehicle.q;
    row.omega = s.vehicle.omega;
    row.u = u;
    row.a_c = target.a_c;
    row.p_ref = p_ref;
    row.e_norm = (s.vehicle.p - p_ref).norm();
    row.wind = wind;
    row.accel = accel_true;
    row.w = s.w / w_scale_;
    row.s_r = s.speed[0];
    row.omega_ff = ctrl.diagnostics().omega_ff;
    row.j_ref = target.j_ref;
    row.ctrl = ctrl.diagnostics();
    result.log.push_back(row);
    if (k == n_steps) break;

    // turbulence held over the control interval
    const double vh = std::hypot(s.vehicle.v.x(), s.vehicle.v.y());
    const double heading = vh > kYawMinAirspeed ? std::atan2(s.vehicle.v.y(), s.vehicle.v.x()) : psi_hold;
    wind = wind_mean + gust.step(s.speed[0], heading);

    try {
      for (int i = 0; i < sub; ++i) {
        const Packed k1 = derivative(x, u, wind);
        const Packed k2 = derivative(x + 0.5 * h * k1, u, wind);
        const Packed k3 = derivative(x + 0.5 * h * k2, u, wind);
        const Packed k4 = derivative(x + h * k3, u, wind);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x.segment<4>(6).normalize();
      }
    } catch (const std::exception& e) {
      result.diverged = true;
      result.message = std::string("integration failed: ") + e.what();
      break;
    }

    const Vec3d p = x.segment<3>(0);
    const Vec3d om = x.segment<3>(10);
    if (!x.allFinite() || p.norm() > 1e4 || om.norm() > 200.0) {
      result.diverged = true;
      result.message = "state diverged at t = " + std::to_string(t + dt_c);
      break;
    }
  }
  return result;
}

RunResult run_simulation(const SimConfig& cfg) { return Simulation(cfg).run(); }

}  // namespace tailsim
