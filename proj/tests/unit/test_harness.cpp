#include <sstream>

#include "doctest.h"
#include "tailsim/harness.hpp"

using namespace tailsim;

namespace {
const char* kCalm = R"(name = calm
guidance.kind = traj
path.kind = circle
path.r = 20
speed.vs = 15
wind.speed = 0
wind.gust = false
sensors.accel_noise = 0
sim.duration = 12
campaign.runs = 1
)";
}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("parse") {
    const Scenario s = parse_scenario(std::string(kCalm) + "# comment\n\ngvf.keff = 0.4\nwind.direction_deg = 90\n");
    CHECK(s.name == "calm");
    CHECK(s.sim.guidance == GuidanceKind::traj);
    CHECK(s.sim.speed.final_speed == 15.0);
    CHECK(s.sim.k_eff == 0.4);
    CHECK(s.sim.wind.direction == doctest::Approx(M_PI / 2));
    CHECK(s.runs == 1);
    CHECK(s.sim.duration == 12.0);
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_scenario("gvf.kff = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("speed.vs = 1\nspeed.vs = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("speed.vs = \n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("speed.vs = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("speed.vs = -3\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("path.kind = circle\npath.omega = 1 2 2\n"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/file.cfg"), ConfigError);
  }

  TEST_CASE("every documented key parses") {
    CHECK(scenario_keys().size() > 40);
    for (const std::string& k : scenario_keys()) CHECK_FALSE(k.empty());
  }

  TEST_CASE("quartiles by linear interpolation") {
    const Quartiles q = quartiles({5.0, 1.0, 4.0, 2.0, 3.0});
    CHECK(q.n == 5);
    CHECK(q.q1 == 2.0);
    CHECK(q.median == 3.0);
    CHECK(q.q3 == 4.0);
    CHECK(q.max == 5.0);
    const Quartiles e = quartiles({0.0, 10.0});
    CHECK(e.q1 == 2.5);
    CHECK(e.median == 5.0);
    CHECK(e.q3 == 7.5);
    CHECK(quartiles({}).n == 0);
  }

  TEST_CASE("csv round trip is exact") {
    SimConfig c = parse_scenario(kCalm).sim;
    c.duration = 0.5;
    c.wind = WindCondition{4.0, 1.0, true, 3};
    c.accel_noise = 0.05;
    const RunResult r = run_simulation(c);
    std::stringstream ss;
    write_csv(ss, r.log);
    const std::string text = ss.str();
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.substr(0, text.find('\n')) ==
          "t,p_n,p_e,p_d,v_n,v_e,v_d,q_w,q_x,q_y,q_z,omega_x,omega_y,omega_z,u_elevon1,u_elevon2,u_rotor1,u_rotor2,"
          "a_c_n,a_c_e,a_c_d,p_g_n,p_g_e,p_g_d,e_norm,vw_n,vw_e,vw_d");
    const std::vector<CsvRow> rows = read_csv(ss);
    REQUIRE(rows.size() == r.log.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i] == csv_row(r.log[i]));

    std::stringstream empty;
    write_csv(empty, SimLog{});
    CHECK(read_csv(empty).empty());

    std::stringstream bad("t,p_n\n0,1\n");
    CHECK_THROWS_AS(read_csv(bad), ConfigError);
  }

  TEST_CASE("metrics window and convergence") {
    const SimConfig c = parse_scenario(kCalm).sim;
    RunResult r;
    for (int i = 0; i <= 200; ++i) {
      LogRow row;
      row.t = 0.1 * i;
      row.e_norm = row.t < 8.0 ? 10.0 - row.t : 0.5;
      row.a_c = Vec3d(0.0, 0.0, i == 3 ? 7.0 : 1.0);
      r.log.push_back(row);
    }
    MetricsOptions opt;
    const RunMetrics m = compute_metrics(r, c, opt);
    CHECK(m.t_start == doctest::Approx(c.speed.rise_time(0.95) + 5.0));
    REQUIRE(m.t_converge.has_value());
    CHECK(*m.t_converge == doctest::Approx(8.0));
    CHECK(m.peak_a_c == 7.0);
    for (double e : m.e_post) CHECK(e <= 10.0);
    opt.exclusion_extra = 8.0;
    CHECK(compute_metrics(r, c, opt).e_post.size() < m.e_post.size());
  }

  TEST_CASE("single calm campaign run equals the direct run") {
    Scenario s = parse_scenario(kCalm);
    s.err_mag_bound = 0.0;
    s.err_dir_bound = 0.0;
    const CampaignReport rep = run_campaign(s);
    REQUIRE(rep.runs.size() == 1);
    const RunResult direct = run_simulation(s.sim);
    const RunMetrics m = compute_metrics(direct, s.sim, s.metrics);
    CHECK(rep.runs[0].metrics.e_post == m.e_post);
    CHECK(rep.pooled.median == m.e.median);
    CHECK(rep.aborted == 0);
  }

  TEST_CASE("campaign is independent of the thread count") {
    Scenario s = parse_scenario(kCalm);
    s.sim.duration = 2.0;
    s.sim.accel_noise = 0.05;
    s.sim.wind = WindCondition{5.0, 225.0 * M_PI / 180.0, true, 1};
    s.runs = 4;
    s.threads = 1;
    const CampaignReport a = run_campaign(s);
    s.threads = 3;
    const CampaignReport b = run_campaign(s);
    REQUIRE(a.runs.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(a.runs[i].id == static_cast<int>(i));
      CHECK(a.runs[i].gust_seed == b.runs[i].gust_seed);
      CHECK(a.runs[i].err_mag == b.runs[i].err_mag);
      CHECK(a.runs[i].metrics.e_post == b.runs[i].metrics.e_post);
      CHECK(std::abs(a.runs[i].err_mag) <= 0.3);
      CHECK(std::abs(a.runs[i].err_dir) <= 0.5);
    }
    CHECK(a.runs[0].gust_seed != a.runs[1].gust_seed);
    CHECK(summary_json(a) == summary_json(b));
  }

  TEST_CASE("initial error preset") {
    const Scenario s = initial_error_scenario(GuidanceKind::traj);
    CHECK(s.sim.init_offset == Vec3d(25.0, 0.0, 0.0));
    CHECK(s.sim.speed.final_speed == 25.0);
    CHECK(s.sim.sat_a == 10.0);
    const Vec3d p0 = default_lissajous().eval(0.0, 0);
    CHECK((p0 - Vec3d(50.0, 0.0, -45.0)).norm() < 1e-12);
  }
}
