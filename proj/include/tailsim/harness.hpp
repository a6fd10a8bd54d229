#pragma once

// Scenario files, run metrics, Monte-Carlo campaigns and file output.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tailsim/engine.hpp"

namespace tailsim {

struct MetricsOptions {
  double exclusion_fraction{0.95};  // of V_s
  double exclusion_extra{5.0};      // s after the speed rise
  double converge_threshold{2.0};   // m
};

struct Scenario {
  std::string name{"scenario"};
  SimConfig sim;
  MetricsOptions metrics;
  int runs{20};
  int threads{0};  // 0 = hardware concurrency
  std::uint64_t master_seed{1};
  double err_mag_bound{0.3};
  double err_dir_bound{0.5};  // rad
};

/// Flat `key = value` text, '#' comments. Unknown keys and bad values throw ConfigError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& file);
/// Keys accepted by parse_scenario.
const std::vector<std::string>& scenario_keys();

/// Lissajous path, V_s = 25, 25 m north offset, traj saturation 10 m/s^2, zero wind.
Scenario initial_error_scenario(GuidanceKind kind = GuidanceKind::gvf);
/// Zero wind, on-path start, no sensor noise.
Scenario nominal_scenario(const ParametricPath& path, double v_s, GuidanceKind kind);
ParametricPath default_lissajous();

struct Quartiles {
  std::size_t n{0};
  double q1{0}, median{0}, q3{0}, max{0};
};

/// Linear-interpolation quartiles. Empty input gives n = 0 and zeros.
Quartiles quartiles(std::vector<double> x);

struct RunMetrics {
  double t_start{0};  // start of the evaluation window
  std::vector<double> e_post;
  Quartiles e;
  double peak_a_c{0};
  double peak_accel{0};
  /// First time after which |e| stays below the threshold.
  std::optional<double> t_converge;
  bool diverged{false};
};

double exclusion_start(const SimConfig& cfg, const MetricsOptions& opt);
RunMetrics compute_metrics(const RunResult& run, const SimConfig& cfg, const MetricsOptions& opt);

// CSV log: t, p(3), v(3), q(4, w first), Omega(3), u(4), a_c(3), p_g(3), e_norm, vw(3).
inline constexpr std::size_t kCsvColumns = 28;
using CsvRow = std::array<double, kCsvColumns>;
const std::array<const char*, kCsvColumns>& csv_header();
CsvRow csv_row(const LogRow& row);
void write_csv(std::ostream& os, const SimLog& log);
/// Throws ConfigError on a header mismatch or malformed field.
std::vector<CsvRow> read_csv(std::istream& is);

/// |e|(t), ground track and commanded vs actual acceleration as SVG files.
void write_plots(const std::filesystem::path& dir, const SimLog& log);

struct RunRecord {
  int id{0};
  std::uint64_t sensor_seed{0};
  std::uint64_t gust_seed{0};
  double err_mag{0};
  double err_dir{0};
  RunMetrics metrics;
  std::string message;
};

struct CampaignReport {
  std::string name;
  GuidanceKind guidance{GuidanceKind::gvf};
  std::vector<RunRecord> runs;  // sorted by id
  Quartiles pooled;             // post-transient |e| of all completed runs
  int aborted{0};
};

/// Configuration of run `id` in a campaign: seeds and wind-estimate errors drawn from the master seed.
RunRecord campaign_member(const Scenario& sc, int id, SimConfig& cfg);
/// Optional per-run hook (called from worker threads).
using RunHook = void (*)(const RunRecord&, const RunResult&, void*);
CampaignReport run_campaign(const Scenario& sc, RunHook hook = nullptr, void* user = nullptr);

void write_report_csv(std::ostream& os, const CampaignReport& rep);
std::string summary_json(const CampaignReport& rep);
std::string run_json(const RunMetrics& m, const RunResult& r, const SimConfig& cfg);

}  // namespace tailsim
