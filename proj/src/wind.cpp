#include "tailsim/wind.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "tailsim/errors.hpp"

namespace tailsim {

namespace {
constexpr double kFeet = 0.3048;
}

Vec3d mean_wind(const WindCondition& cond) {
  if (!(cond.speed >= 0.0)) throw InvalidInputError("wind speed must be non-negative");
  return {-cond.speed * std::cos(cond.direction), -cond.speed * std::sin(cond.direction), 0.0};
}

Vec3d estimated_mean_wind(const Vec3d& v_ws, const WindEstimateError& err) {
  const double s = 1.0 + err.mag;
  const double c = std::cos(err.dir);
  const double n = std::sin(err.dir);
  return {s * (c * v_ws.x() - n * v_ws.y()), s * (n * v_ws.x() + c * v_ws.y()), s * v_ws.z()};
}

DrydenParams dryden_params(double w20, double altitude) {
  if (!(altitude > 0.0)) throw InvalidInputError("dryden: altitude must be positive");
  if (!(w20 >= 0.0)) throw InvalidInputError("dryden: W20 must be non-negative");
  const double h = altitude / kFeet;
  const double k = 0.177 + 0.000823 * h;
  DrydenParams p;
  p.length_w = h * kFeet;
  p.length_u = h / std::pow(k, 1.2) * kFeet;
  p.length_v = p.length_u;
  p.sigma_w = 0.1 * w20;
  p.sigma_u = p.sigma_w / std::pow(k, 0.4);
  p.sigma_v = p.sigma_u;
  return p;
}

void ShapingFilter::discretize(double dt) {
  const auto n = a.rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = -a;
  m.topRightCorner(n, n) = b * b.transpose();
  m.bottomRightCorner(n, n) = a.transpose();
  const Eigen::MatrixXd e = (m * dt).exp();
  phi = e.bottomRightCorner(n, n).transpose();
  Eigen::MatrixXd q = phi * e.topRightCorner(n, n);
  q = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  q_sqrt = es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
  if (x.size() != n) x = Eigen::VectorXd::Zero(n);
}

double ShapingFilter::stationary_variance() const {
  // Solve A P + P A^T + b b^T = 0 through the Kronecker form.
  const auto n = a.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      k.block(i * n, j * n, n, n) = a(i, j) * id + (i == j ? a : Eigen::MatrixXd::Zero(n, n));
    }
  }
  const Eigen::MatrixXd bb = b * b.transpose();
  Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(bb.data(), n * n);
  Eigen::VectorXd pv = k.fullPivLu().solve(rhs);
  Eigen::Map<Eigen::MatrixXd> p(pv.data(), n, n);
  return (c * p * c.transpose())(0, 0);
}

ShapingFilter dryden_u_filter(double sigma, double length, double airspeed) {
  const double t = length / airspeed;
  ShapingFilter f;
  f.a = Eigen::MatrixXd::Constant(1, 1, -1.0 / t);
  f.b = Eigen::VectorXd::Constant(1, 1.0 / t);
  f.c = Eigen::RowVectorXd::Constant(1, sigma * std::sqrt(2.0 * t));
  return f;
}

ShapingFilter dryden_vw_filter(double sigma, double length, double airspeed) {
  // K (1 + sqrt(3) T s) / (1 + T s)^2
  const double t = length / airspeed;
  const double k = sigma * std::sqrt(t);
  ShapingFilter f;
  f.a.resize(2, 2);
  f.a << 0.0, 1.0, -1.0 / (t * t), -2.0 / t;
  f.b = Eigen::Vector2d(0.0, 1.0 / (t * t));
  f.c.resize(2);
  f.c << k, k * std::sqrt(3.0) * t;
  return f;
}

double dryden_u_psd(double sigma, double length, double airspeed, double omega) {
  const double t = length / airspeed;
  return 2.0 * t * sigma * sigma / (1.0 + t * t * omega * omega);
}

double dryden_vw_psd(double sigma, double length, double airspeed, double omega) {
  const double t = length / airspeed;
  const double x = t * t * omega * omega;
  return t * sigma * sigma * (1.0 + 3.0 * x) / ((1.0 + x) * (1.0 + x));
}

DrydenGust::DrydenGust(const WindCondition& cond, double altitude, double dt)
    : cond_(cond), params_(dryden_params(cond.speed, altitude)), dt_(dt), rng_(cond.seed) {
  if (!(dt > 0.0)) throw InvalidInputError("dryden: dt must be positive");
}

void DrydenGust::rebuild(double airspeed) {
  std::array<ShapingFilter, 3> next{dryden_u_filter(params_.sigma_u, params_.length_u, airspeed),
                                    dryden_vw_filter(params_.sigma_v, params_.length_v, airspeed),
                                    dryden_vw_filter(params_.sigma_w, params_.length_w, airspeed)};
  for (std::size_t i = 0; i < 3; ++i) {
    next[i].x = filters_[i].x.size() == next[i].a.rows() ? filters_[i].x : Eigen::VectorXd::Zero(next[i].a.rows());
    next[i].discretize(dt_);
  }
  filters_ = std::move(next);
  airspeed_ = airspeed;
}

Vec3d DrydenGust::step(double traversal_speed, double heading) {
  if (!cond_.gust || cond_.speed == 0.0) return Vec3d::Zero();
  const double v = std::max(traversal_speed, 1.0);
  if (v != airspeed_) rebuild(v);
  for (std::size_t i = 0; i < 3; ++i) {
    ShapingFilter& f = filters_[i];
    Eigen::VectorXd noise(f.x.size());
    for (Eigen::Index k = 0; k < noise.size(); ++k) noise[k] = normal_(rng_);
    f.x = f.phi * f.x + f.q_sqrt * noise;
    last_[static_cast<Eigen::Index>(i)] = (f.c * f.x)(0, 0);
  }
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {c * last_[0] - s * last_[1], s * last_[0] + c * last_[1], last_[2]};
}

}  // namespace tailsim
