#pragma once

// Parametric paths p = f(w) with analytic derivatives up to third order, and
// the arc-length reparameterization used to build the time-referenced
// trajectory for the tracking baseline.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "tailsim/frames.hpp"

namespace tailsim {

/// f, f', f'', f''' at one parameter value.
template <typename Scalar>
struct PathJet {
  std::array<Vec3<Scalar>, 4> d;

  const Vec3<Scalar>& f() const { return d[0]; }
  const Vec3<Scalar>& df() const { return d[1]; }
  const Vec3<Scalar>& ddf() const { return d[2]; }
  const Vec3<Scalar>& dddf() const { return d[3]; }
};

/// Level circle of radius r around the origin at height z0 (NED, so altitude is -z0).
struct CirclePath {
  double radius{20.0};
  double z0{-50.0};

  template <typename Scalar>
  Vec3<Scalar> eval(const Scalar& w, int order) const {
    using std::cos;
    using std::sin;
    const Scalar c = cos(w);
    const Scalar s = sin(w);
    switch (order) {
      case 0:
        return {radius * c, radius * s, Scalar(z0)};
      case 1:
        return {-radius * s, radius * c, Scalar(0)};
      case 2:
        return {-radius * c, -radius * s, Scalar(0)};
      default:
        return {radius * s, -radius * c, Scalar(0)};
    }
  }
};

/// f_i(w) = center_i + amplitude_i cos(freq_i w + phase_i).
struct LissajousPath {
  Vec3d amplitude{50.0, 15.0, 5.0};
  Vec3d freq{1.0, 2.0, 2.0};
  Vec3d phase{0.0, M_PI / 2.0, 0.0};
  Vec3d center{Vec3d::Zero()};

  template <typename Scalar>
  Vec3<Scalar> eval(const Scalar& w, int order) const {
    using std::cos;
    using std::sin;
    Vec3<Scalar> out;
    for (int i = 0; i < 3; ++i) {
      const Scalar arg = freq[i] * w + phase[i];
      const double k = std::pow(freq[i], order);
      switch (order) {
        case 0:
          out[i] = center[i] + amplitude[i] * cos(arg);
          break;
        case 1:
          out[i] = -amplitude[i] * k * sin(arg);
          break;
        case 2:
          out[i] = -amplitude[i] * k * cos(arg);
          break;
        default:
          out[i] = amplitude[i] * k * sin(arg);
          break;
      }
    }
    return out;
  }
};

/// Arbitrary path supplied as a jet function.
struct UserPath {
  std::function<PathJet<double>(double)> jet;
  std::string name{"user"};
};

class ParametricPath {
 public:
  using Shape = std::variant<CirclePath, LissajousPath, UserPath>;

  ParametricPath() : shape_(CirclePath{}) {}
  explicit ParametricPath(Shape shape) : shape_(std::move(shape)) {}

  /// The `order`-th derivative (0..3) with respect to w.
  Vec3d eval(double w, int order) const;
  PathJet<double> jet(double w) const;

  std::string descriptor() const;
  const Shape& shape() const { return shape_; }

  /// Root-mean-square of |f'| over one period of w in [0, 2 pi].
  double mean_tangent_norm(int samples = 2048) const;

 private:
  Shape shape_;
};

ParametricPath circle(double radius, double z0);
ParametricPath lissajous(const Vec3d& amplitude, const Vec3d& freq, const Vec3d& phase,
                         const Vec3d& center = Vec3d::Zero());

/// Same curve with parameter u = scale * w, so d^k f / du^k = f^(k)(w) / scale^k.
ParametricPath rescaled(const ParametricPath& path, double scale);

/// Parameter of the point on the path nearest to p: coarse grid over [w_lo, w_hi], then golden-section refinement.
double nearest_parameter(const ParametricPath& path, const Vec3d& p, double w_lo = 0.0, double w_hi = 2.0 * M_PI,
                         int coarse = 2000);

}  // namespace tailsim
