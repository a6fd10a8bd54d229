#include "tailsim/gvf_guidance.hpp"

#include <cmath>

namespace tailsim {

void GvfField::validate() const {
  if (!gain.allFinite() || (gain.array() <= 0.0).any()) throw InvalidInputError("GVF gain must be positive");
}

ChiValue chi(const Vec3d& p, double w, const GvfField& field) {
  const Vec3d f = field.path.eval(w, 0);
  const Vec3d f1 = field.path.eval(w, 1);
  ChiValue out;
  out.phi = p - f;
  const Vec3d k_phi = field.gain.cwiseProduct(out.phi);
  out.sigma = k_phi.dot(f1);
  out.chi_p = -f1 + f1 * out.sigma - k_phi;
  out.chi_w = -1.0 + out.sigma;
  return out;
}

ChiMatrices chi_matrices(const Vec3d& p, double w, const GvfField& field) {
  const PathJet<double> jt = field.path.jet(w);
  const Vec3d& f1 = jt.d[1];
  const Vec3d& f2 = jt.d[2];
  const Vec3d& f3 = jt.d[3];
  const Vec3d phi = p - jt.d[0];
  const Vec3d& k = field.gain;
  const Vec3d kf1 = k.cwiseProduct(f1);

  ChiMatrices m;
  m.sigma = k.cwiseProduct(phi).dot(f1);
  m.sigma_w = (k.array() * (phi.array() * f2.array() - f1.array().square())).sum();
  m.sigma_ww = (k.array() * (phi.array() * f3.array() - 3.0 * f1.array() * f2.array())).sum();

  m.j_chi_pg_p = f1 * kf1.transpose();
  m.j_chi_p_p = m.j_chi_pg_p;
  m.j_chi_p_p.diagonal() -= k;
  m.j_chi_w_p = kf1;

  m.dchi_pg_dw = -f2 + f2 * m.sigma + f1 * m.sigma_w;
  m.dchi_p_dw = m.dchi_pg_dw + kf1;
  m.dchi_w_dw = m.sigma_w;

  m.d2chi_pg_dw2 = -f3 + f3 * m.sigma + 2.0 * f2 * m.sigma_w + f1 * m.sigma_ww;
  m.d2chi_p_dw2 = m.d2chi_pg_dw2 + k.cwiseProduct(f2);

  m.h_chi_p_pw = f2 * kf1.transpose() + f1 * k.cwiseProduct(f2).transpose();
  return m;
}

Vec3d tune_gain(const Vec3d& k_eff, double s_hat) {
  if (!(s_hat > 0.0)) throw InvalidInputError("tune_gain: s_hat must be positive");
  return k_eff / s_hat;
}

double gvf_w_dot(const Vec3d& p, double w, double s_r, const GvfField& field) {
  const ChiValue c = chi(p, w, field);
  const double n = c.chi_p.norm();
  if (n < kChiMin) throw DegenerateError("GVF: |chi_p| vanishes");
  return s_r / n * c.chi_w;
}

GvfOutput gvf_evaluate(const Vec3d& p, const Vec3d& v, double w, const SpeedSample& sp, const GvfField& field,
                       const Vec3d& k_v) {
  GvfOutput o;
  o.chi = chi(p, w, field);
  const ChiMatrices m = chi_matrices(p, w, field);
  const Vec3d& cp = o.chi.chi_p;
  const double n = cp.norm();
  if (n < kChiMin) throw DegenerateError("GVF: |chi_p| vanishes");
  const double n3 = n * n * n;

  o.s_hat = sp.s / n;
  o.w_dot = o.s_hat * o.chi.chi_w;
  o.chi_p_dot = m.j_chi_p_p * v + m.dchi_p_dw * o.w_dot;
  const double cdc = o.chi_p_dot.dot(cp);
  o.s_hat_dot = sp.s_dot / n - sp.s * cdc / n3;
  const double chi_w_dot = m.j_chi_w_p.dot(v) + m.dchi_w_dw * o.w_dot;
  o.w_ddot = o.s_hat_dot * o.chi.chi_w + o.s_hat * chi_w_dot;

  o.v_c = o.s_hat * cp;
  o.v_c_dot = o.s_hat_dot * cp + o.s_hat * o.chi_p_dot;
  o.e_v = v - o.v_c;
  o.a_c = o.v_c_dot - k_v.cwiseProduct(o.e_v);
  o.k_eff = o.s_hat * field.gain;

  const Vec3d hv = m.h_chi_p_pw * v;
  o.chi_p_ddot = m.j_chi_p_p * o.a_c + 2.0 * hv * o.w_dot + m.dchi_p_dw * o.w_ddot + m.d2chi_p_dw2 * o.w_dot * o.w_dot;
  o.s_hat_ddot = sp.s_ddot / n - 2.0 * sp.s_dot * cdc / n3 -
                 sp.s * (o.chi_p_ddot.dot(cp) + o.chi_p_dot.squaredNorm()) / n3 +
                 3.0 * sp.s * cdc * cdc / (n3 * n * n);

  const Vec3d f1 = field.path.eval(w, 1);
  const Vec3d chi_pg = -f1 + f1 * o.chi.sigma;
  const Vec3d chi_pg_dot = m.j_chi_pg_p * v + m.dchi_pg_dw * o.w_dot;
  const Vec3d chi_pg_ddot =
      m.j_chi_pg_p * o.a_c + 2.0 * hv * o.w_dot + m.dchi_pg_dw * o.w_ddot + m.d2chi_pg_dw2 * o.w_dot * o.w_dot;

  o.guide.p = p - o.chi.phi;
  o.guide.v = o.s_hat * chi_pg;
  o.guide.a = o.s_hat_dot * chi_pg + o.s_hat * chi_pg_dot;
  o.guide.j = o.s_hat_ddot * chi_pg + 2.0 * o.s_hat_dot * chi_pg_dot + o.s_hat * chi_pg_ddot;
  return o;
}

}  // namespace tailsim
