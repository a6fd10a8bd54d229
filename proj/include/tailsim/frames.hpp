#pragma once

// Frame conventions: inertial frame is NED, body frame has b_z along the
// longitudinal axis (thrust acts along -b_z) and b_x pointing forward in hover.
// Quaternions are Hamilton, scalar-first in all I/O, and map body to inertial:
// x_i = q (x) [0 x_b] (x) q*.

#include <cmath>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "tailsim/errors.hpp"

namespace tailsim {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Quat = Eigen::Quaternion<Scalar>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;
using Quatd = Quat<double>;

inline constexpr double kGravity = 9.81;

inline Vec3d gravity_ned() { return {0.0, 0.0, kGravity}; }

/// Yaw, roll, pitch of the intrinsic Z-X-Y sequence: R = Rz(yaw) Rx(roll) Ry(pitch).
template <typename Scalar>
struct EulerZXY {
  Scalar yaw{0};
  Scalar roll{0};
  Scalar pitch{0};
};

template <typename Scalar>
Mat3<Scalar> skew(const Vec3<Scalar>& v) {
  Mat3<Scalar> m;
  m << Scalar(0), -v.z(), v.y(),  //
      v.z(), Scalar(0), -v.x(),   //
      -v.y(), v.x(), Scalar(0);
  return m;
}

template <typename Scalar>
Mat3<Scalar> rot_x(const Scalar& a) {
  using std::cos;
  using std::sin;
  Mat3<Scalar> m;
  m << Scalar(1), Scalar(0), Scalar(0),  //
      Scalar(0), cos(a), -sin(a),        //
      Scalar(0), sin(a), cos(a);
  return m;
}

template <typename Scalar>
Mat3<Scalar> rot_y(const Scalar& a) {
  using std::cos;
  using std::sin;
  Mat3<Scalar> m;
  m << cos(a), Scalar(0), sin(a),  //
      Scalar(0), Scalar(1), Scalar(0),  //
      -sin(a), Scalar(0), cos(a);
  return m;
}

template <typename Scalar>
Mat3<Scalar> rot_z(const Scalar& a) {
  using std::cos;
  using std::sin;
  Mat3<Scalar> m;
  m << cos(a), -sin(a), Scalar(0),  //
      sin(a), cos(a), Scalar(0),    //
      Scalar(0), Scalar(0), Scalar(1);
  return m;
}

/// Rotation matrix R_b^i of a unit quaternion. Throws if |q| deviates from 1 by more than 1e-6.
template <typename Scalar>
Mat3<Scalar> quat_to_rotmat(const Quat<Scalar>& q) {
  using std::abs;
  if (!(abs(q.norm() - Scalar(1)) <= Scalar(1e-6))) {
    throw InvalidInputError("quat_to_rotmat: quaternion is not unit norm");
  }
  return q.toRotationMatrix();
}

template <typename Scalar>
Quat<Scalar> hamilton(const Quat<Scalar>& a, const Quat<Scalar>& b) {
  return a * b;
}

/// Sign-fix the double cover so that the scalar part is non-negative.
template <typename Scalar>
Quat<Scalar> canonicalize(const Quat<Scalar>& q) {
  if (q.w() < Scalar(0)) {
    return Quat<Scalar>(-q.w(), -q.x(), -q.y(), -q.z());
  }
  return q;
}

template <typename Scalar>
Quat<Scalar> euler_zxy_to_quat(const EulerZXY<Scalar>& e) {
  using Axis = Eigen::AngleAxis<Scalar>;
  Quat<Scalar> q = Quat<Scalar>(Axis(e.yaw, Vec3<Scalar>::UnitZ())) *
                   Quat<Scalar>(Axis(e.roll, Vec3<Scalar>::UnitX())) *
                   Quat<Scalar>(Axis(e.pitch, Vec3<Scalar>::UnitY()));
  return q.normalized();
}

template <typename Scalar>
EulerZXY<Scalar> rotmat_to_euler_zxy(const Mat3<Scalar>& r) {
  using std::asin;
  using std::atan2;
  using std::clamp;
  EulerZXY<Scalar> e;
  e.roll = asin(std::clamp(r(2, 1), Scalar(-1), Scalar(1)));
  e.pitch = atan2(-r(2, 0), r(2, 2));
  e.yaw = atan2(-r(0, 1), r(1, 1));
  return e;
}

template <typename Scalar>
EulerZXY<Scalar> quat_to_euler_zxy(const Quat<Scalar>& q) {
  return rotmat_to_euler_zxy<Scalar>(quat_to_rotmat(q));
}

/// Attitude error q_e = q_c (x) q*, canonicalized to the shortest rotation.
template <typename Scalar>
Quat<Scalar> quat_error(const Quat<Scalar>& q_cmd, const Quat<Scalar>& q) {
  return canonicalize<Scalar>((q_cmd * q.conjugate()).normalized());
}

/// Time derivative of a body-to-inertial quaternion for body rate omega: 0.5 q (x) [0 omega].
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> quat_rate(const Quat<Scalar>& q, const Vec3<Scalar>& omega) {
  const Quat<Scalar> w(Scalar(0), omega.x(), omega.y(), omega.z());
  const Quat<Scalar> d = q * w;
  Eigen::Matrix<Scalar, 4, 1> out;
  out << Scalar(0.5) * d.w(), Scalar(0.5) * d.x(), Scalar(0.5) * d.y(), Scalar(0.5) * d.z();
  return out;
}

/// Wrap to (-pi, pi].
inline double wrap_pi(double a) {
  a = std::remainder(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace tailsim
