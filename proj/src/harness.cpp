#include "tailsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace tailsim {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || std::isnan(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError(key + ": not an unsigned integer: '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const std::uint64_t x = to_uint(key, v);
  if (x > 1000000) throw ConfigError(key + ": value too large");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

Vec3d to_vec3(const std::string& key, const std::string& v) {
  std::vector<std::string> parts;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (parts.size() != 3) throw ConfigError(key + ": expected three comma-separated numbers");
  return {to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2])};
}

constexpr double kDeg = M_PI / 180.0;

}  // namespace

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = {
      "name",
      "guidance.kind",
      "path.kind", "path.r", "path.z0", "path.c", "path.omega", "path.d", "path.center",
      "speed.vs", "speed.zeta", "speed.wn", "speed.alpha",
      "gvf.keff", "gvf.kv", "gvf.w0", "gvf.param_scale",
      "traj.sat_a",
      "wind.speed", "wind.direction_deg", "wind.gust", "wind.seed", "wind.err_mag", "wind.err_dir",
      "wind.err_mag_bound", "wind.err_dir_bound",
      "inner.cutoff", "inner.kq", "inner.komega", "inner.rate_hz", "inner.elevon_force_cutoff", "inner.ff_source",
      "sensors.accel_noise",
      "model.set", "model.cx1", "model.cx2", "model.cx3", "model.cy1", "model.cz1", "model.cz2", "model.mux1",
      "model.mux2", "model.muy1", "model.muy2", "model.muy3", "model.muy4", "model.muz1", "model.muz2", "model.muz3",
      "model.inertia",
      "actuators.elevon_max", "actuators.rotor_min", "actuators.rotor_max", "actuators.servo_wn",
      "actuators.servo_zeta", "actuators.motor_tau",
      "init.offset",
      "sim.duration", "sim.physics_hz", "sim.seed",
      "campaign.runs", "campaign.threads", "campaign.seed",
      "metrics.exclusion_fraction", "metrics.exclusion_extra", "metrics.converge_threshold",
  };
  return keys;
}

ParametricPath default_lissajous() {
  return lissajous({50.0, 15.0, 5.0}, {1.0, 2.0, 2.0}, {0.0, M_PI / 2.0, 0.0}, {0.0, 0.0, -50.0});
}

Scenario parse_scenario(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const auto& keys = scenario_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (val.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    if (!kv.emplace(key, val).second) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }

  Scenario sc;
  SimConfig& c = sc.sim;
  auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto num = [&](const char* key, double& out) {
    if (const auto* v = get(key)) out = to_double(key, *v);
  };

  if (const auto* v = get("name")) sc.name = *v;
  if (const auto* v = get("guidance.kind")) {
    if (*v == "gvf") c.guidance = GuidanceKind::gvf;
    else if (*v == "traj") c.guidance = GuidanceKind::traj;
    else throw ConfigError("guidance.kind: expected gvf or traj");
  }

  const std::string kind = get("path.kind") ? *get("path.kind") : "circle";
  if (kind == "circle") {
    for (const char* k : {"path.c", "path.omega", "path.d", "path.center"}) {
      if (get(k)) throw ConfigError(std::string(k) + " does not apply to a circle");
    }
    double r = 20.0, z0 = -50.0;
    num("path.r", r);
    num("path.z0", z0);
    if (!(r > 0.0)) throw ConfigError("path.r must be positive");
    c.path = circle(r, z0);
  } else if (kind == "lissajous") {
    for (const char* k : {"path.r", "path.z0"}) {
      if (get(k)) throw ConfigError(std::string(k) + " does not apply to a lissajous path");
    }
    LissajousPath l = std::get<LissajousPath>(default_lissajous().shape());
    if (const auto* v = get("path.c")) l.amplitude = to_vec3("path.c", *v);
    if (const auto* v = get("path.omega")) l.freq = to_vec3("path.omega", *v);
    if (const auto* v = get("path.d")) l.phase = to_vec3("path.d", *v);
    if (const auto* v = get("path.center")) l.center = to_vec3("path.center", *v);
    c.path = lissajous(l.amplitude, l.freq, l.phase, l.center);
  } else {
    throw ConfigError("path.kind: expected circle or lissajous");
  }

  num("speed.vs", c.speed.final_speed);
  num("speed.zeta", c.speed.zeta);
  num("speed.wn", c.speed.wn);
  num("speed.alpha", c.speed.alpha);
  num("gvf.keff", c.k_eff);
  num("gvf.kv", c.k_v);
  num("gvf.w0", c.w_start);
  num("gvf.param_scale", c.gvf_param_scale);
  num("traj.sat_a", c.sat_a);

  num("wind.speed", c.wind.speed);
  double dir_deg = c.wind.direction / kDeg;
  num("wind.direction_deg", dir_deg);
  c.wind.direction = dir_deg * kDeg;
  if (const auto* v = get("wind.gust")) c.wind.gust = to_bool("wind.gust", *v);
  if (const auto* v = get("wind.seed")) c.wind.seed = to_uint("wind.seed", *v);
  num("wind.err_mag", c.wind_error.mag);
  num("wind.err_dir", c.wind_error.dir);
  num("wind.err_mag_bound", sc.err_mag_bound);
  num("wind.err_dir_bound", sc.err_dir_bound);

  if (const auto* v = get("model.set")) {
    if (*v != "cyclone") throw ConfigError("model.set: only 'cyclone' is built in");
  }
  ModelCoefficients& mc = c.model;
  const std::pair<const char*, double*> coeffs[] = {
      {"model.cx1", &mc.cx1},   {"model.cx2", &mc.cx2},   {"model.cx3", &mc.cx3},   {"model.cy1", &mc.cy1},
      {"model.cz1", &mc.cz1},   {"model.cz2", &mc.cz2},   {"model.mux1", &mc.mux1}, {"model.mux2", &mc.mux2},
      {"model.muy1", &mc.muy1}, {"model.muy2", &mc.muy2}, {"model.muy3", &mc.muy3}, {"model.muy4", &mc.muy4},
      {"model.muz1", &mc.muz1}, {"model.muz2", &mc.muz2}, {"model.muz3", &mc.muz3}};
  for (const auto& [key, dst] : coeffs) num(key, *dst);
  if (const auto* v = get("model.inertia")) mc.inertia = to_vec3("model.inertia", *v);
  num("actuators.elevon_max", c.actuators.limits.elevon_max);
  num("actuators.rotor_min", c.actuators.limits.rotor_min);
  num("actuators.rotor_max", c.actuators.limits.rotor_max);
  num("actuators.servo_wn", c.actuators.servo_wn);
  num("actuators.servo_zeta", c.actuators.servo_zeta);
  num("actuators.motor_tau", c.actuators.motor_tau);
  c.control.limits = c.actuators.limits;

  num("inner.cutoff", c.control.cutoff);
  if (const auto* v = get("inner.kq")) c.control.gains.kq = Vec3d::Constant(to_double("inner.kq", *v));
  if (const auto* v = get("inner.komega")) c.control.gains.komega = Vec3d::Constant(to_double("inner.komega", *v));
  num("inner.rate_hz", c.control.rate_hz);
  num("inner.elevon_force_cutoff", c.control.elevon_force_cutoff);
  if (const auto* v = get("inner.ff_source")) {
    if (*v == "command") c.control.ff_source = FeedforwardSource::command;
    else if (*v == "reference") c.control.ff_source = FeedforwardSource::reference;
    else throw ConfigError("inner.ff_source: expected command or reference");
  }
  num("sensors.accel_noise", c.accel_noise);
  if (const auto* v = get("init.offset")) c.init_offset = to_vec3("init.offset", *v);
  num("sim.duration", c.duration);
  num("sim.physics_hz", c.physics_hz);
  if (const auto* v = get("sim.seed")) c.seed = to_uint("sim.seed", *v);

  if (const auto* v = get("campaign.runs")) sc.runs = to_int("campaign.runs", *v);
  if (const auto* v = get("campaign.threads")) sc.threads = to_int("campaign.threads", *v);
  if (const auto* v = get("campaign.seed")) sc.master_seed = to_uint("campaign.seed", *v);
  num("metrics.exclusion_fraction", sc.metrics.exclusion_fraction);
  num("metrics.exclusion_extra", sc.metrics.exclusion_extra);
  num("metrics.converge_threshold", sc.metrics.converge_threshold);

  if (!(sc.metrics.exclusion_fraction > 0.0 && sc.metrics.exclusion_fraction < 1.0)) {
    throw ConfigError("metrics.exclusion_fraction must be in (0, 1)");
  }
  if (!(sc.metrics.exclusion_extra >= 0.0)) throw ConfigError("metrics.exclusion_extra must be non-negative");
  if (!(sc.metrics.converge_threshold > 0.0)) throw ConfigError("metrics.converge_threshold must be positive");
  if (sc.runs < 1) throw ConfigError("campaign.runs must be at least 1");
  if (!(sc.err_mag_bound >= 0.0) || !(sc.err_dir_bound >= 0.0)) throw ConfigError("wind error bounds must be non-negative");
  try {
    c.validate();
  } catch (const InvalidInputError& e) {
    throw ConfigError(e.what());
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

Scenario nominal_scenario(const ParametricPath& path, double v_s, GuidanceKind kind) {
  Scenario sc;
  sc.name = "nominal";
  sc.sim.guidance = kind;
  sc.sim.path = path;
  sc.sim.speed.final_speed = v_s;
  sc.sim.accel_noise = 0.0;
  sc.sim.duration = 40.0;
  sc.runs = 1;
  return sc;
}

Scenario initial_error_scenario(GuidanceKind kind) {
  Scenario sc = nominal_scenario(default_lissajous(), 25.0, kind);
  sc.name = "initial_error";
  sc.sim.init_offset = Vec3d(25.0, 0.0, 0.0);
  sc.sim.sat_a = 10.0;
  return sc;
}

// ---------------------------------------------------------------------------
// Metrics

Quartiles quartiles(std::vector<double> x) {
  Quartiles q;
  q.n = x.size();
  if (x.empty()) return q;
  std::sort(x.begin(), x.end());
  auto at = [&](double p) {
    const double h = p * static_cast<double>(x.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
  };
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  q.max = x.back();
  return q;
}

double exclusion_start(const SimConfig& cfg, const MetricsOptions& opt) {
  return cfg.speed.rise_time(opt.exclusion_fraction) + opt.exclusion_extra;
}

RunMetrics compute_metrics(const RunResult& run, const SimConfig& cfg, const MetricsOptions& opt) {
  RunMetrics m;
  m.diverged = run.diverged;
  m.t_start = exclusion_start(cfg, opt);
  for (const LogRow& r : run.log) {
    m.peak_a_c = std::max(m.peak_a_c, r.a_c.norm());
    m.peak_accel = std::max(m.peak_accel, r.accel.norm());
    if (r.t >= m.t_start) m.e_post.push_back(r.e_norm);
  }
  m.e = quartiles(m.e_post);
  if (!run.log.empty() && !run.diverged) {
    std::size_t i = run.log.size();
    while (i > 0 && run.log[i - 1].e_norm < opt.converge_threshold) --i;
    if (i < run.log.size()) m.t_converge = run.log[i].t;
  }
  return m;
}

// ---------------------------------------------------------------------------
// CSV

const std::array<const char*, kCsvColumns>& csv_header() {
  static const std::array<const char*, kCsvColumns> h = {
      "t",       "p_n",      "p_e",      "p_d",     "v_n",     "v_e",     "v_d",     "q_w",     "q_x",     "q_y",
      "q_z",     "omega_x",  "omega_y",  "omega_z", "u_elevon1", "u_elevon2", "u_rotor1", "u_rotor2", "a_c_n", "a_c_e",
      "a_c_d",   "p_g_n",    "p_g_e",    "p_g_d",   "e_norm",  "vw_n",    "vw_e",    "vw_d"};
  return h;
}

CsvRow csv_row(const LogRow& r) {
  return {r.t,         r.p.x(),     r.p.y(),     r.p.z(),     r.v.x(),     r.v.y(),     r.v.z(),
          r.q.w(),     r.q.x(),     r.q.y(),     r.q.z(),     r.omega.x(), r.omega.y(), r.omega.z(),
          r.u.elevon1, r.u.elevon2, r.u.rotor1,  r.u.rotor2,  r.a_c.x(),   r.a_c.y(),   r.a_c.z(),
          r.p_ref.x(), r.p_ref.y(), r.p_ref.z(), r.e_norm,    r.wind.x(),  r.wind.y(),  r.wind.z()};
}

void write_csv(std::ostream& os, const SimLog& log) {
  const auto& h = csv_header();
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
  os << '\n';
  char buf[32];
  for (const LogRow& r : log) {
    const CsvRow row = csv_row(r);
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      if (i) os << ',';
      os << buf;
    }
    os << '\n';
  }
  if (!os) throw std::runtime_error("write_csv: stream error");
}

std::vector<CsvRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("read_csv: missing header");
  std::string expect;
  for (std::size_t i = 0; i < csv_header().size(); ++i) expect += std::string(i ? "," : "") + csv_header()[i];
  if (line != expect) throw ConfigError("read_csv: header does not match the log schema");
  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    CsvRow row{};
    std::size_t col = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (true) {
      const char* comma = std::find(p, end, ',');
      if (col >= kCsvColumns) throw ConfigError("read_csv: too many columns");
      const std::string field(p, comma);
      row[col++] = to_double("read_csv", field);
      if (comma == end) break;
      p = comma + 1;
    }
    if (col != kCsvColumns) throw ConfigError("read_csv: expected 28 columns");
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Plots

namespace {

struct Series {
  std::vector<double> x, y;
  const char* color;
  const char* label;
};

void svg_plot(const std::filesystem::path& file, const std::string& title, const std::string& xlabel,
              const std::string& ylabel, const std::vector<Series>& series, bool equal_axes = false) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!(x1 > x0)) x0 -= 1.0, x1 += 1.0;
  if (!(y1 > y0)) y0 -= 1.0, y1 += 1.0;
  const double w = 640, h = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  double sx = (w - ml - mr) / (x1 - x0);
  double sy = (h - mt - mb) / (y1 - y0);
  if (equal_axes) sx = sy = std::min(sx, sy);

  std::ofstream os(file);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << title << "</text>\n"
     << "<text x=\"" << w / 2 << "\" y=\"" << h - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xlabel << "</text>\n"
     << "<text x=\"16\" y=\"" << h / 2 << "\" transform=\"rotate(-90 16 " << h / 2
     << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << ylabel << "</text>\n"
     << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << w - ml - mr << "\" height=\"" << h - mt - mb
     << "\" fill=\"none\" stroke=\"#888\"/>\n";
  char buf[64];
  auto tick = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return std::string(buf);
  };
  os << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#444\">\n"
     << "<text x=\"" << ml << "\" y=\"" << h - mb + 14 << "\">" << tick(x0) << "</text>\n"
     << "<text x=\"" << w - mr << "\" y=\"" << h - mb + 14 << "\" text-anchor=\"end\">" << tick(x0 + (w - ml - mr) / sx)
     << "</text>\n"
     << "<text x=\"" << ml - 4 << "\" y=\"" << h - mb << "\" text-anchor=\"end\">" << tick(y0) << "</text>\n"
     << "<text x=\"" << ml - 4 << "\" y=\"" << mt + 10 << "\" text-anchor=\"end\">" << tick(y0 + (h - mt - mb) / sy)
     << "</text>\n</g>\n";
  int li = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
    const std::size_t stride = std::max<std::size_t>(1, s.x.size() / 4000);
    for (std::size_t i = 0; i < s.x.size(); i += stride) {
      std::snprintf(buf, sizeof buf, "%.1f,%.1f ", ml + (s.x[i] - x0) * sx, h - mb - (s.y[i] - y0) * sy);
      os << buf;
    }
    os << "\"/>\n<text x=\"" << w - mr - 4 << "\" y=\"" << mt + 14 + 14 * li++
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << s.color << "\">" << s.label
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace

void write_plots(const std::filesystem::path& dir, const SimLog& log) {
  std::filesystem::create_directories(dir);
  Series e{{}, {}, "#c03030", "|e|"};
  Series track{{}, {}, "#2050c0", "vehicle"};
  Series ref{{}, {}, "#909090", "reference"};
  Series ac{{}, {}, "#c03030", "|a_c|"};
  Series a{{}, {}, "#2050c0", "|a|"};
  for (const LogRow& r : log) {
    e.x.push_back(r.t), e.y.push_back(r.e_norm);
    track.x.push_back(r.p.y()), track.y.push_back(r.p.x());
    ref.x.push_back(r.p_ref.y()), ref.y.push_back(r.p_ref.x());
    ac.x.push_back(r.t), ac.y.push_back(r.a_c.norm());
    a.x.push_back(r.t), a.y.push_back(r.accel.norm());
  }
  svg_plot(dir / "error.svg", "tracking error", "t (s)", "|e| (m)", {e});
  svg_plot(dir / "track.svg", "ground track", "east (m)", "north (m)", {ref, track}, true);
  svg_plot(dir / "accel.svg", "acceleration", "t (s)", "m/s^2", {ac, a});
}

// ---------------------------------------------------------------------------
// Campaign

RunRecord campaign_member(const Scenario& sc, int id, SimConfig& cfg) {
  cfg = sc.sim;
  std::seed_seq seq{static_cast<std::uint32_t>(sc.master_seed), static_cast<std::uint32_t>(sc.master_seed >> 32),
                    static_cast<std::uint32_t>(id)};
  std::mt19937_64 rng(seq);
  RunRecord rec;
  rec.id = id;
  rec.sensor_seed = rng();
  rec.gust_seed = rng();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  rec.err_mag = sc.err_mag_bound * u(rng);
  rec.err_dir = sc.err_dir_bound * u(rng);
  cfg.seed = rec.sensor_seed;
  cfg.wind.seed = rec.gust_seed;
  cfg.wind_error = {rec.err_mag, rec.err_dir};
  return rec;
}

CampaignReport run_campaign(const Scenario& sc, RunHook hook, void* user) {
  sc.sim.validate();
  CampaignReport rep;
  rep.name = sc.name;
  rep.guidance = sc.sim.guidance;
  rep.runs.resize(static_cast<std::size_t>(sc.runs));

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int id = next++; id < sc.runs; id = next++) {
      SimConfig cfg;
      RunRecord rec = campaign_member(sc, id, cfg);
      RunResult res;
      try {
        res = run_simulation(cfg);
      } catch (const std::exception& e) {
        res.diverged = true;
        res.message = e.what();
      }
      rec.metrics = compute_metrics(res, cfg, sc.metrics);
      rec.message = res.message;
      if (hook) hook(rec, res, user);
      rep.runs[static_cast<std::size_t>(id)] = std::move(rec);
    }
  };
  int threads = sc.threads > 0 ? sc.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, sc.runs);
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<double> pooled;
  for (const RunRecord& r : rep.runs) {
    if (r.metrics.diverged) {
      ++rep.aborted;
      continue;
    }
    pooled.insert(pooled.end(), r.metrics.e_post.begin(), r.metrics.e_post.end());
  }
  rep.pooled = quartiles(std::move(pooled));
  return rep;
}

void write_report_csv(std::ostream& os, const CampaignReport& rep) {
  os << "run,sensor_seed,gust_seed,err_mag,err_dir,diverged,e_median,e_q1,e_q3,e_max,peak_a_c,peak_accel,t_converge\n";
  char buf[512];
  for (const RunRecord& r : rep.runs) {
    const RunMetrics& m = r.metrics;
    std::snprintf(buf, sizeof buf, "%d,%llu,%llu,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,", r.id,
                  static_cast<unsigned long long>(r.sensor_seed), static_cast<unsigned long long>(r.gust_seed),
                  r.err_mag, r.err_dir, m.diverged ? 1 : 0, m.e.median, m.e.q1, m.e.q3, m.e.max, m.peak_a_c,
                  m.peak_accel);
    os << buf;
    if (m.t_converge) {
      std::snprintf(buf, sizeof buf, "%.17g", *m.t_converge);
      os << buf;
    }
    os << '\n';
  }
}

namespace {
nlohmann::json quartile_json(const Quartiles& q) {
  return {{"n", q.n}, {"q1", q.q1}, {"median", q.median}, {"q3", q.q3}, {"max", q.max}};
}
}  // namespace

std::string summary_json(const CampaignReport& rep) {
  nlohmann::json j;
  j["name"] = rep.name;
  j["guidance"] = to_string(rep.guidance);
  j["runs"] = rep.runs.size();
  j["aborted"] = rep.aborted;
  j["e_pooled"] = quartile_json(rep.pooled);
  std::vector<double> medians;
  nlohmann::json failures = nlohmann::json::array();
  for (const RunRecord& r : rep.runs) {
    if (r.metrics.diverged) failures.push_back({{"run", r.id}, {"message", r.message}});
    else medians.push_back(r.metrics.e.median);
  }
  j["e_run_medians"] = quartile_json(quartiles(medians));
  j["aborted_runs"] = failures;
  return j.dump(2) + "\n";
}

std::string run_json(const RunMetrics& m, const RunResult& r, const SimConfig& cfg) {
  nlohmann::json j;
  j["guidance"] = to_string(cfg.guidance);
  j["path"] = cfg.path.descriptor();
  j["v_s"] = cfg.speed.final_speed;
  j["diverged"] = r.diverged;
  if (!r.message.empty()) j["message"] = r.message;
  j["samples"] = r.log.size();
  j["window_start"] = m.t_start;
  j["e"] = quartile_json(m.e);
  j["peak_a_c"] = m.peak_a_c;
  j["peak_accel"] = m.peak_accel;
  j["peak_accel_g"] = m.peak_accel / kGravity;
  j["t_converge"] = m.t_converge ? nlohmann::json(*m.t_converge) : nlohmann::json(nullptr);
  j["k_gain"] = r.k_gain;
  return j.dump(2) + "\n";
}

}  // namespace tailsim
