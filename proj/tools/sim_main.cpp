// sim: command-line front end for single runs, campaigns and the acceptance suite.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tailsim/harness.hpp"
#include "tailsim/validation.hpp"

namespace fs = std::filesystem;
using namespace tailsim;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kConfigError = 2;
constexpr int kDiverged = 3;

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream os(file, std::ios::binary);
  os << text;
  if (!os) throw std::runtime_error("cannot write " + file.string());
}

int cmd_run(const std::string& config, const std::string& guidance, std::optional<std::uint64_t> seed,
            const std::string& out) {
  Scenario sc = load_scenario(config);
  if (guidance == "gvf") sc.sim.guidance = GuidanceKind::gvf;
  if (guidance == "traj") sc.sim.guidance = GuidanceKind::traj;
  if (seed) {
    sc.sim.seed = *seed;
    sc.sim.wind.seed = *seed;
  }
  const RunResult res = run_simulation(sc.sim);
  const RunMetrics m = compute_metrics(res, sc.sim, sc.metrics);

  std::printf("%s %s: %zu samples, median |e| %.4g m, max |e| %.4g m, peak |a| %.2f g, peak |a_c| %.2f m/s^2\n",
              sc.name.c_str(), to_string(sc.sim.guidance), res.log.size(), m.e.median, m.e.max,
              m.peak_accel / kGravity, m.peak_a_c);
  if (!out.empty()) {
    fs::create_directories(out);
    std::ofstream csv(fs::path(out) / "log.csv", std::ios::binary);
    write_csv(csv, res.log);
    csv.close();
    write_text(fs::path(out) / "metrics.json", run_json(m, res, sc.sim));
    write_plots(out, res.log);
    std::printf("wrote %s\n", out.c_str());
  }
  if (res.diverged) {
    std::fprintf(stderr, "run aborted: %s\n", res.message.c_str());
    return kDiverged;
  }
  return kOk;
}

struct LogSink {
  fs::path dir;
};

void save_run_log(const RunRecord& rec, const RunResult& res, void* user) {
  const auto* sink = static_cast<LogSink*>(user);
  char name[32];
  std::snprintf(name, sizeof name, "run_%04d.csv", rec.id);
  std::ofstream os(sink->dir / name, std::ios::binary);
  write_csv(os, res.log);
}

int cmd_campaign(const std::string& config, int runs, const std::string& out, int threads, bool logs) {
  Scenario sc = load_scenario(config);
  if (runs > 0) sc.runs = runs;
  if (threads > 0) sc.threads = threads;
  fs::create_directories(out);
  LogSink sink{fs::path(out) / "runs"};
  if (logs) fs::create_directories(sink.dir);
  const CampaignReport rep = run_campaign(sc, logs ? save_run_log : nullptr, &sink);

  std::ofstream csv(fs::path(out) / "report.csv", std::ios::binary);
  write_report_csv(csv, rep);
  csv.close();
  write_text(fs::path(out) / "summary.json", summary_json(rep));
  std::printf("%s %s: %zu runs, %d aborted, pooled |e| median %.4g m [%.4g, %.4g], max %.4g m\n", rep.name.c_str(),
              to_string(rep.guidance), rep.runs.size(), rep.aborted, rep.pooled.median, rep.pooled.q1, rep.pooled.q3,
              rep.pooled.max);
  return rep.aborted > 0 ? kDiverged : kOk;
}

int cmd_validate(int runs, int threads, const std::vector<int>& only) {
  ValidationOptions opt;
  opt.mc_runs = runs;
  opt.threads = threads;
  opt.only = only;
  bool all = true;
  run_acceptance(opt, [&](const CheckResult& r) {
    std::printf("%s\n", format_result(r).c_str());
    std::fflush(stdout);
    all = all && r.pass;
  });
  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tailsitter guidance simulator"};
  app.require_subcommand(1);

  std::string config, guidance, out;
  std::uint64_t seed = 0;
  int runs = 0, threads = 0;
  bool logs = false;
  std::vector<int> only;

  auto* run = app.add_subcommand("run", "simulate one scenario");
  run->add_option("--config", config, "scenario file")->required();
  run->add_option("--guidance", guidance, "override guidance kind")->check(CLI::IsMember({"gvf", "traj"}));
  auto* seed_opt = run->add_option("--seed", seed, "sensor and gust seed");
  run->add_option("--out", out, "output directory for log.csv, metrics.json and plots");

  auto* camp = app.add_subcommand("campaign", "Monte-Carlo campaign");
  camp->add_option("--config", config, "scenario file")->required();
  camp->add_option("--runs", runs, "number of runs")->required()->check(CLI::PositiveNumber);
  camp->add_option("--out", out, "output directory")->required();
  camp->add_option("--threads", threads, "worker threads (0 = all cores)");
  camp->add_flag("--logs", logs, "also write one CSV log per run");

  auto* val = app.add_subcommand("validate", "run the acceptance suite");
  runs = 20;
  val->add_option("--runs", runs, "Monte-Carlo runs per condition")->check(CLI::PositiveNumber);
  val->add_option("--threads", threads, "worker threads (0 = all cores)");
  val->add_option("--only", only, "criterion numbers to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) {
      std::optional<std::uint64_t> s;
      if (seed_opt->count() > 0) s = seed;
      return cmd_run(config, guidance, s, out);
    }
    if (*camp) return cmd_campaign(config, runs, out, threads, logs);
    return cmd_validate(runs, threads, only);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const InvalidInputError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailed;
  }
}
