#pragma once

// Mean wind, Dryden low-altitude turbulence and the wind-estimate error model.

#include <array>
#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "tailsim/frames.hpp"

namespace tailsim {

struct WindCondition {
  double speed{0.0};      // m/s
  double direction{0.0};  // compass bearing the wind blows from (rad)
  bool gust{false};
  std::uint64_t seed{1};
};

struct WindEstimateError {
  double mag{0.0};  // relative
  double dir{0.0};  // rad
};

/// Horizontal NED wind vector; a wind from bearing b blows toward b + pi.
Vec3d mean_wind(const WindCondition& cond);

/// R_z(err.dir) (1 + err.mag) v_ws.
Vec3d estimated_mean_wind(const Vec3d& v_ws, const WindEstimateError& err);

/// Low-altitude turbulence intensities and scale lengths (SI units).
struct DrydenParams {
  double sigma_u{0}, sigma_v{0}, sigma_w{0};  // m/s
  double length_u{0}, length_v{0}, length_w{0};  // m
};

/// W20 is the wind speed at 20 ft; altitude in metres above ground (> 0).
DrydenParams dryden_params(double w20, double altitude);

/// Exact discretization of a continuous LTI shaping filter driven by unit-intensity white noise.
struct ShapingFilter {
  Eigen::MatrixXd a;  // continuous
  Eigen::VectorXd b;
  Eigen::RowVectorXd c;

  Eigen::MatrixXd phi;   // discrete transition
  Eigen::MatrixXd q_sqrt;  // factor of the discrete process noise covariance
  Eigen::VectorXd x;

  void discretize(double dt);
  double stationary_variance() const;
};

/// Longitudinal (first order) and lateral/vertical (second order) Dryden filters.
ShapingFilter dryden_u_filter(double sigma, double length, double airspeed);
ShapingFilter dryden_vw_filter(double sigma, double length, double airspeed);

/// |H(j omega)|^2 of the continuous filters, used for spectral checks.
double dryden_u_psd(double sigma, double length, double airspeed, double omega);
double dryden_vw_psd(double sigma, double length, double airspeed, double omega);

/// Seeded Dryden gust generator. Filters are re-discretized whenever the
/// traversal speed changes; the gust is resolved along the ground track.
class DrydenGust {
 public:
  DrydenGust(const WindCondition& cond, double altitude, double dt);

  /// Advance one step and return the gust in NED. `heading` is the ground-track azimuth.
  Vec3d step(double traversal_speed, double heading);

  /// Gust components in the track frame from the last step.
  const Eigen::Vector3d& last_track_gust() const { return last_; }
  const DrydenParams& params() const { return params_; }

 private:
  void rebuild(double airspeed);

  WindCondition cond_;
  DrydenParams params_;
  double dt_;
  double airspeed_{-1.0};
  std::array<ShapingFilter, 3> filters_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  Eigen::Vector3d last_{Eigen::Vector3d::Zero()};
};

}  // namespace tailsim
