#include "tailsim/paths.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tailsim/errors.hpp"

namespace tailsim {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

Vec3d ParametricPath::eval(double w, int order) const {
  if (order < 0 || order > 3) throw InvalidInputError("path derivative order must be in 0..3");
  return std::visit(overloaded{[&](const CirclePath& c) { return c.eval<double>(w, order); },
                               [&](const LissajousPath& l) { return l.eval<double>(w, order); },
                               [&](const UserPath& u) { return Vec3d(u.jet(w).d[order]); }},
                    shape_);
}

PathJet<double> ParametricPath::jet(double w) const {
  if (const auto* u = std::get_if<UserPath>(&shape_)) return u->jet(w);
  PathJet<double> j;
  for (int k = 0; k < 4; ++k) j.d[k] = eval(w, k);
  return j;
}

std::string ParametricPath::descriptor() const {
  std::ostringstream os;
  std::visit(overloaded{[&](const CirclePath& c) { os << "circle(r=" << c.radius << ", z0=" << c.z0 << ")"; },
                        [&](const LissajousPath& l) {
                          os << "lissajous(c=" << l.amplitude.transpose() << ", omega=" << l.freq.transpose()
                             << ", d=" << l.phase.transpose() << ")";
                        },
                        [&](const UserPath& u) { os << u.name; }},
             shape_);
  return os.str();
}

double ParametricPath::mean_tangent_norm(int samples) const {
  if (samples < 1) throw InvalidInputError("mean_tangent_norm: samples must be positive");
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double w = 2.0 * M_PI * i / samples;
    acc += eval(w, 1).squaredNorm();
  }
  return std::sqrt(acc / samples);
}

ParametricPath circle(double radius, double z0) {
  if (!(radius > 0.0)) throw InvalidInputError("circle: radius must be positive");
  return ParametricPath(CirclePath{radius, z0});
}

ParametricPath lissajous(const Vec3d& amplitude, const Vec3d& freq, const Vec3d& phase, const Vec3d& center) {
  if (!amplitude.allFinite() || !freq.allFinite() || !phase.allFinite() || !center.allFinite()) {
    throw InvalidInputError("lissajous: parameters must be finite");
  }
  LissajousPath l;
  l.amplitude = amplitude;
  l.freq = freq;
  l.phase = phase;
  l.center = center;
  return ParametricPath(l);
}

ParametricPath rescaled(const ParametricPath& path, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidInputError("rescaled: scale must be positive");
  UserPath u;
  u.name = path.descriptor() + " scaled by " + std::to_string(scale);
  u.jet = [path, scale](double w) {
    PathJet<double> j = path.jet(w / scale);
    double f = 1.0;
    for (int k = 1; k < 4; ++k) {
      f /= scale;
      j.d[k] *= f;
    }
    return j;
  };
  return ParametricPath(u);
}

double nearest_parameter(const ParametricPath& path, const Vec3d& p, double w_lo, double w_hi, int coarse) {
  if (!(w_hi > w_lo) || coarse < 2) throw InvalidInputError("nearest_parameter: bad search range");
  auto dist2 = [&](double w) { return (path.eval(w, 0) - p).squaredNorm(); };
  const double h = (w_hi - w_lo) / coarse;
  double best_w = w_lo;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= coarse; ++i) {
    const double w = w_lo + i * h;
    const double d = dist2(w);
    if (d < best) {
      best = d;
      best_w = w;
    }
  }
  // golden-section refine inside the neighbouring cells
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_w - h;
  double b = best_w + h;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = dist2(c);
  double fd = dist2(d);
  for (int i = 0; i < 100 && (b - a) > 1e-13; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = dist2(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = dist2(d);
    }
  }
  const double w = 0.5 * (a + b);
  return dist2(w) <= best ? w : best_w;
}

}  // namespace tailsim
