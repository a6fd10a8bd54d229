#include "tailsim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "tailsim/errors.hpp"

namespace tailsim {

TimedTrajectory::TimedTrajectory(double dt, std::vector<TrajectorySample> samples)
    : dt_(dt), samples_(std::move(samples)) {
  if (!(dt > 0.0) || samples_.size() < 2) throw InvalidInputError("TimedTrajectory needs dt > 0 and two samples");
}

double TimedTrajectory::duration() const { return samples_.empty() ? 0.0 : samples_.back().t; }

namespace {

// Cubic Hermite on value/derivative pairs over an interval of length h.
Vec3d hermite(const Vec3d& y0, const Vec3d& m0, const Vec3d& y1, const Vec3d& m1, double s, double h) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * m0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * m1;
}

}  // namespace

TrajectorySample TimedTrajectory::sample(double t) const {
  const double end = duration();
  if (samples_.empty() || t < -1e-9 || t > end + 1e-9) throw EndOfTrajectory("trajectory queried outside its span");
  t = std::clamp(t, 0.0, end);
  auto i = static_cast<std::size_t>(t / dt_);
  if (i >= samples_.size() - 1) i = samples_.size() - 2;
  const TrajectorySample& a = samples_[i];
  const TrajectorySample& b = samples_[i + 1];
  const double h = b.t - a.t;
  const double s = std::clamp((t - a.t) / h, 0.0, 1.0);

  TrajectorySample out;
  out.t = t;
  out.w = a.w + s * (b.w - a.w);
  out.p = hermite(a.p, a.v, b.p, b.v, s, h);
  out.v = hermite(a.v, a.a, b.v, b.a, s, h);
  out.a = hermite(a.a, a.j, b.a, b.j, s, h);
  out.j = a.j + s * (b.j - a.j);
  return out;
}

TimedTrajectory arc_length_reparam(const ParametricPath& path, const SpeedProfile& speed, double duration, double dt,
                                   double w0, double direction) {
  if (!(duration > 0.0) || !(dt > 0.0)) throw InvalidInputError("arc_length_reparam: duration and dt must be positive");
  if (direction != 1.0 && direction != -1.0) throw InvalidInputError("arc_length_reparam: direction must be +1 or -1");

  const auto n = static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
  const Eigen::Matrix3d a_sys = speed.system_matrix();
  const Eigen::Matrix3d phi_half = (a_sys * (0.5 * dt)).exp();
  const Eigen::Vector3d steady(speed.final_speed, 0.0, 0.0);

  auto tangent_norm = [&](double w) {
    const double nn = path.eval(w, 1).norm();
    if (!(nn >= 1e-9)) throw DegenerateError("arc_length_reparam: |f'| vanishes along the path");
    return nn;
  };

  auto make_sample = [&](double t, double w, const Eigen::Vector3d& s) {
    const PathJet<double> jt = path.jet(w);
    const Vec3d& f1 = jt.d[1];
    const Vec3d& f2 = jt.d[2];
    const Vec3d& f3 = jt.d[3];
    const double nn = f1.norm();
    if (!(nn >= 1e-9)) throw DegenerateError("arc_length_reparam: |f'| vanishes along the path");
    const double f12 = f1.dot(f2);
    const double g = 1.0 / nn;
    const double g_w = -f12 / (nn * nn * nn);
    const double g_ww = -(f2.squaredNorm() + f1.dot(f3)) / (nn * nn * nn) + 3.0 * f12 * f12 / std::pow(nn, 5);
    const double wd = direction * s[0] * g;
    const double wdd = direction * (s[1] * g + s[0] * g_w * wd);
    const double wddd = direction * (s[2] * g + 2.0 * s[1] * g_w * wd + s[0] * g_ww * wd * wd + s[0] * g_w * wdd);
    TrajectorySample out;
    out.t = t;
    out.w = w;
    out.p = jt.d[0];
    out.v = f1 * wd;
    out.a = f2 * wd * wd + f1 * wdd;
    out.j = f3 * wd * wd * wd + 3.0 * f2 * wd * wdd + f1 * wddd;
    return out;
  };

  std::vector<TrajectorySample> out;
  out.reserve(n + 1);
  double w = w0;
  Eigen::Vector3d s = Eigen::Vector3d::Zero();
  out.push_back(make_sample(0.0, w, s));
  for (std::size_t k = 0; k < n; ++k) {
    // speed state propagated exactly; w integrated with RK4
    const Eigen::Vector3d s_mid = steady + phi_half * (s - steady);
    const Eigen::Vector3d s_end = steady + phi_half * (s_mid - steady);
    const double k1 = direction * s[0] / tangent_norm(w);
    const double k2 = direction * s_mid[0] / tangent_norm(w + 0.5 * dt * k1);
    const double k3 = direction * s_mid[0] / tangent_norm(w + 0.5 * dt * k2);
    const double k4 = direction * s_end[0] / tangent_norm(w + dt * k3);
    w += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s = s_end;
    out.push_back(make_sample(static_cast<double>(k + 1) * dt, w, s));
  }
  return TimedTrajectory(dt, std::move(out));
}

}  // namespace tailsim
