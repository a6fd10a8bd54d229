#pragma once

// Extended parametric guiding vector field, its Lyapunov guidance law, and
// the guiding-point derivative chain used for the rate feedforward.

#include "tailsim/flatness.hpp"
#include "tailsim/paths.hpp"
#include "tailsim/speed_profile.hpp"

namespace tailsim {

struct GvfField {
  ParametricPath path;
  Vec3d gain{Vec3d::Constant(0.5)};  // diagonal of K, all > 0

  void validate() const;
};

struct ChiValue {
  Vec3d chi_p{Vec3d::Zero()};
  double chi_w{0};
  Vec3d phi{Vec3d::Zero()};  // p - f(w)
  double sigma{0};
};

/// chi_p = -f' + f' (K phi)^T f' - K phi,  chi_w = -1 + (K phi)^T f'.
ChiValue chi(const Vec3d& p, double w, const GvfField& field);

/// Analytic partial derivatives of chi in p and w.
struct ChiMatrices {
  double sigma{0}, sigma_w{0}, sigma_ww{0};
  Mat3d j_chi_p_p;         // d chi_p / d p
  Vec3d j_chi_w_p;         // d chi_w / d p (as a column)
  Vec3d dchi_p_dw;
  double dchi_w_dw{0};
  Vec3d d2chi_p_dw2;
  Mat3d h_chi_p_pw;        // d/dw of d chi_p / d p
  Mat3d j_chi_pg_p;
  Vec3d dchi_pg_dw;
  Vec3d d2chi_pg_dw2;
};

ChiMatrices chi_matrices(const Vec3d& p, double w, const GvfField& field);

/// K = K_eff / s_hat (elementwise). Throws InvalidInputError for s_hat <= 0.
Vec3d tune_gain(const Vec3d& k_eff, double s_hat);

/// Path parameter rate w' = s_r chi_w / |chi_p|.
double gvf_w_dot(const Vec3d& p, double w, double s_r, const GvfField& field);

/// Guiding point p_g = f(w) and its first three time derivatives.
struct GuidingPoint {
  Vec3d p{Vec3d::Zero()};
  Vec3d v{Vec3d::Zero()};
  Vec3d a{Vec3d::Zero()};
  Vec3d j{Vec3d::Zero()};
};

struct GvfOutput {
  Vec3d a_c{Vec3d::Zero()};
  Vec3d v_c{Vec3d::Zero()};
  Vec3d v_c_dot{Vec3d::Zero()};
  Vec3d e_v{Vec3d::Zero()};
  ChiValue chi;
  Vec3d chi_p_dot{Vec3d::Zero()};
  Vec3d chi_p_ddot{Vec3d::Zero()};
  double s_hat{0}, s_hat_dot{0}, s_hat_ddot{0};
  double w_dot{0}, w_ddot{0};
  Vec3d k_eff{Vec3d::Zero()};  // realized s_hat K
  GuidingPoint guide;
};

/// Guidance law a_c = v_c' - K_v (p' - v_c) together with the full guiding-point
/// derivative chain; the commanded a_c stands in for p'' inside the second
/// derivatives. Throws DegenerateError when |chi_p| < 1e-6.
GvfOutput gvf_evaluate(const Vec3d& p, const Vec3d& v, double w, const SpeedSample& sp, const GvfField& field,
                       const Vec3d& k_v);

inline constexpr double kChiMin = 1e-6;

}  // namespace tailsim
