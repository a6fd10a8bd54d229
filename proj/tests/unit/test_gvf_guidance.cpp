#include <vector>

#include "doctest.h"
#include "tailsim/gvf_guidance.hpp"
#include "tailsim/harness.hpp"

using namespace tailsim;

TEST_SUITE("gvf_guidance") {
  TEST_CASE("on the path the field is the reversed tangent") {
    const GvfField f{circle(20.0, -50.0), Vec3d::Constant(0.3)};
    const double w = 0.8;
    const ChiValue c = chi(f.path.eval(w, 0), w, f);
    CHECK((c.chi_p + f.path.eval(w, 1)).norm() < 1e-12);
    CHECK(c.chi_w == doctest::Approx(-1.0));
    CHECK(c.phi.norm() < 1e-12);
    CHECK(gvf_w_dot(f.path.eval(w, 0), w, 10.0, f) == doctest::Approx(-10.0 / 20.0));
  }

  TEST_CASE("tune gain") {
    CHECK((tune_gain(Vec3d::Constant(0.5), 25.0) - Vec3d::Constant(0.02)).norm() < 1e-15);
    CHECK_THROWS_AS(tune_gain(Vec3d::Constant(0.5), 0.0), InvalidInputError);
  }

  TEST_CASE("path error decays as exp(-s_hat K t) under the guiding velocity") {
    // for any p and w: d/dt phi = s_hat (chi_p - f' chi_w) = -s_hat K phi
    const GvfField f{default_lissajous(), Vec3d(0.02, 0.03, 0.05)};
    const Vec3d p(10.0, -4.0, -40.0);
    const double w = 1.1;
    const ChiValue c = chi(p, w, f);
    const Vec3d phi_dot = c.chi_p - f.path.eval(w, 1) * c.chi_w;
    CHECK((phi_dot + f.gain.cwiseProduct(c.phi)).norm() < 1e-12);
  }

  TEST_CASE("guiding-point derivative chain matches the motion of an ideal double integrator") {
    const ParametricPath base = default_lissajous();
    const GvfField f{rescaled(base, base.mean_tangent_norm()), Vec3d::Constant(0.5 / 20.0)};
    const Vec3d kv = Vec3d::Constant(5.0);
    const SpeedProfile sp{20.0, 1.2, 0.8, 1.25};

    Vec3d p = f.path.eval(0.5, 0) + Vec3d(2.0, -1.0, 0.5);
    Vec3d v = Vec3d::Zero();
    double w = 0.5;
    double t = 2.0;
    const double dt = 1e-4;
    auto sample = [&](double tt) {
      const SpeedSample s = sp.sample(tt);
      return s;
    };
    std::vector<GvfOutput> out;
    std::vector<double> times;
    // RK4 on (p, v, w) with a = a_c
    for (int i = 0; i <= 20000; ++i) {
      if (i >= 10000 && i < 20000 && i % 1000 <= 2) {
        out.push_back(gvf_evaluate(p, v, w, sample(t), f, kv));
        times.push_back(t);
      }
      struct D {
        Vec3d dp, dv;
        double dw;
      };
      auto rate = [&](const Vec3d& pp, const Vec3d& vv, double ww, double tt) {
        const GvfOutput g = gvf_evaluate(pp, vv, ww, sample(tt), f, kv);
        return D{vv, g.a_c, g.w_dot};
      };
      const D k1 = rate(p, v, w, t);
      const D k2 = rate(p + dt / 2 * k1.dp, v + dt / 2 * k1.dv, w + dt / 2 * k1.dw, t + dt / 2);
      const D k3 = rate(p + dt / 2 * k2.dp, v + dt / 2 * k2.dv, w + dt / 2 * k2.dw, t + dt / 2);
      const D k4 = rate(p + dt * k3.dp, v + dt * k3.dv, w + dt * k3.dw, t + dt);
      p += dt / 6 * (k1.dp + 2 * k2.dp + 2 * k3.dp + k4.dp);
      v += dt / 6 * (k1.dv + 2 * k2.dv + 2 * k3.dv + k4.dv);
      w += dt / 6 * (k1.dw + 2 * k2.dw + 2 * k3.dw + k4.dw);
      t += dt;
    }
    REQUIRE(out.size() % 3 == 0);
    for (std::size_t i = 0; i + 2 < out.size(); i += 3) {
      const GvfOutput& a = out[i];
      const GvfOutput& m = out[i + 1];
      const GvfOutput& b = out[i + 2];
      const double h = times[i + 2] - times[i];
      const Vec3d dv = (b.guide.p - a.guide.p) / h;
      const Vec3d da = (b.guide.v - a.guide.v) / h;
      const Vec3d dj = (b.guide.a - a.guide.a) / h;
      const Vec3d dvc = (b.v_c - a.v_c) / h;
      CHECK((dv - m.guide.v).norm() < 1e-5 * std::max(1.0, m.guide.v.norm()));
      CHECK((da - m.guide.a).norm() < 1e-5 * std::max(1.0, m.guide.a.norm()));
      CHECK((dj - m.guide.j).norm() < 1e-4 * std::max(1.0, m.guide.j.norm()));
      CHECK((dvc - m.v_c_dot).norm() < 1e-5 * std::max(1.0, m.v_c_dot.norm()));
      CHECK((b.w_dot - a.w_dot) / h == doctest::Approx(m.w_ddot).epsilon(1e-5));
      // realized gain equals s_hat K
      CHECK((m.k_eff - m.s_hat * f.gain).norm() < 1e-15);
    }
  }

  TEST_CASE("vanishing field is reported") {
    // circle of radius 2: K phi = f' / 3 makes chi_p vanish
    const GvfField f{circle(2.0, 0.0), Vec3d::Ones()};
    const double w = 0.0;
    const Vec3d p = f.path.eval(w, 0) + f.path.eval(w, 1) / 3.0;
    CHECK(chi(p, w, f).chi_p.norm() < 1e-12);
    CHECK_THROWS_AS(gvf_evaluate(p, Vec3d::Zero(), w, SpeedSample{5.0, 0, 0}, f, Vec3d::Ones()), DegenerateError);
    CHECK_THROWS_AS(gvf_w_dot(p, w, 5.0, f), DegenerateError);
  }
}
