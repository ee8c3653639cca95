// Command-line front end: run a configured simulation, evaluate the linearized
// solution, or execute the verification suites.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ultrarad/config.hpp"
#include "ultrarad/diagnostics.hpp"
#include "ultrarad/io.hpp"
#include "ultrarad/linear.hpp"
#include "ultrarad/scheme.hpp"
#include "ultrarad/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ultrarad;

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kDomainError = 2, kVerifyFailure = 3 };

struct Flags {
  fs::path out_dir = ".";
  bool keep_history = false;
  std::optional<int> decimation;
  int threads = 1;
};

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

json snapshot_report(const Snapshot& snap) {
  json j;
  j["requested_time"] = snap.requested_time;
  j["level"] = snap.level.n;
  j["t"] = snap.level.t;
  const PrimitiveState inner = to_primitive(snap.level.states.front());
  j["axis_pressure"] = inner.p;
  j["axis_velocity"] = three_velocity(inner.u);
  try {
    const double pos = diagnostics::detect_shock(snap.level);
    const auto [left, right] = diagnostics::shock_sides(snap.level, pos);
    j["shock"] = {{"position", pos}, {"admissible", diagnostics::shock_admissible(left, right)}};
  } catch (const std::exception&) {
    j["shock"] = nullptr;
  }
  return j;
}

int run_command(const fs::path& config_path, const Flags& flags) {
  const RunConfig cfg = load_config(config_path);
  const GridSpec grid = cfg.grid();
  const PiecewiseData data = cfg.initial_data();
  const int decimation = flags.decimation.value_or(cfg.decimation);
  if (decimation < 1) throw ConfigError(0, "invariant decimation >= 1 violated");

  RunOptions options;
  options.snapshot_times = cfg.snapshot_times;
  options.keep_history = flags.keep_history || cfg.outputs.spacetime_grid;
  options.history_decimation = decimation;
  options.threads = flags.threads;

  // Diagnostics collected on the fly so history is not needed for them.
  const bool diag = cfg.outputs.diagnostics;
  std::optional<diagnostics::EnergyBalanceTracker> energy;
  if (diag) energy.emplace(grid, 0.9 * cfg.x_star);
  std::optional<diagnostics::InwardShockTracker> inward;
  if (diag && cfg.preset == Preset::kExample4 && cfg.t_star >= 4.5) {
    inward.emplace(grid, 3.5, 4.5, diagnostics::Window{0.0, 1.2});
  }
  Level previous;
  double entropy_min = 0.0;
  double entropy_max = 0.0;
  const auto observer = [&](const Level& level) {
    if (!diag) return;
    energy->observe(level);
    if (inward) inward->observe(level);
    if (level.n > 1) {
      const auto e = diagnostics::entropy_production(previous, level, grid);
      entropy_min = std::min(entropy_min, e.min_value);
      entropy_max = std::max(entropy_max, e.max_value);
    }
    previous = level;
  };

  const SimulationResult result = run(data, grid, options, observer);

  fs::create_directories(flags.out_dir);
  if (cfg.outputs.snapshot_csv) {
    for (const auto& snap : result.snapshots) {
      io::emit_snapshot(snap.level, flags.out_dir / ("snapshot_t" + time_tag(snap.requested_time) + ".csv"));
    }
  }
  if (cfg.outputs.spacetime_grid) {
    io::emit_spacetime_grid(result, decimation, io::GridField::kPressure, flags.out_dir / "spacetime_p.csv");
    io::emit_spacetime_grid(result, decimation, io::GridField::kVelocity, flags.out_dir / "spacetime_v.csv");
  }

  if (diag) {
    json report;
    report["preset"] = preset_name(cfg.preset);
    report["grid"] = {{"t_star", grid.t_star}, {"x_star", grid.x_star}, {"N", grid.N}, {"M", grid.M},
                      {"dt", grid.dt}, {"dx", grid.dx}, {"lambda", grid.lambda}};
    double min_margin = 1.0;
    double p_min = INFINITY;
    double p_max = 0.0;
    double boundary_b = 0.0;
    std::size_t violations = 0;
    for (const auto& s : result.stats) {
      min_margin = std::min(min_margin, s.min_margin);
      p_min = std::min(p_min, s.p_min);
      p_max = std::max(p_max, s.p_max);
      boundary_b = std::max(boundary_b, std::abs(s.boundary_b));
      violations += s.violations;
    }
    report["stability"] = {{"min_margin", min_margin}, {"p_min", p_min}, {"p_max", p_max},
                           {"max_abs_boundary_b", boundary_b}, {"violations", violations}};
    json snaps = json::array();
    for (const auto& snap : result.snapshots) snaps.push_back(snapshot_report(snap));
    report["snapshots"] = snaps;
    if (result.snapshots.size() >= 2 && result.snapshots.front().level.t > 0.0) {
      const auto sim = diagnostics::self_similarity_error(result.snapshots.front().level,
                                                          result.snapshots.back().level);
      report["self_similarity"] = {{"p_error", sim.p_error}, {"v_error", sim.v_error}};
    }
    const auto balance = energy->result();
    report["energy_balance"] = {{"radius", 0.9 * cfg.x_star}, {"max_normalized_residual", balance.max_normalized}};
    report["entropy_production"] = {{"min", entropy_min}, {"max", entropy_max}};
    if (inward) {
      try {
        const auto est = inward->arrival();
        report["axis_arrival"] = {{"threshold_time", est.threshold_time},
                                  {"extrapolated_time", est.extrapolated_time}};
      } catch (const diagnostics::NoShockError&) {
        report["axis_arrival"] = nullptr;
      }
    }
    std::ofstream(flags.out_dir / "report.json", std::ios::binary) << report.dump(2) << '\n';
  }
  std::cout << "run: " << grid.level_count() << " levels, " << result.snapshots.size()
            << " snapshots written to " << flags.out_dir.string() << '\n';
  return kOk;
}

int linear_command(const fs::path& config_path, const Flags& flags) {
  const RunConfig cfg = load_config(config_path);
  const PiecewiseData data = cfg.initial_data();
  if (data.variables != Variables::kConserved) {
    throw ConfigError(0, "linear evaluation needs data in (a, b) variables");
  }
  const linear::LinearSolution solution(data);
  fs::create_directories(flags.out_dir);
  const fs::path path = flags.out_dir / "linear.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "t,x,a,b\n";
  const LinearSampling& s = cfg.linear;
  for (double t : s.times) {
    for (int i = 0; i < s.samples; ++i) {
      const double x = s.x_min + (s.x_max - s.x_min) * i / (s.samples - 1);
      const ConservedState v = solution(t, x);
      out << io::format_number(t) << ',' << io::format_number(x) << ',' << io::format_number(v.a) << ','
          << io::format_number(v.b) << '\n';
    }
  }
  std::cout << "linear: wrote " << path.string() << '\n';
  return kOk;
}

int verify_command(const std::string& suite) {
  const auto results = verify::run_suite(suite);
  verify::write_report(results, std::cout);
  return verify::all_passed(results) ? kOk : kVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radially symmetric ultra-relativistic Euler simulator"};
  app.require_subcommand(1);
  Flags flags;
  std::string out_dir = ".";
  int decimation = 0;
  app.add_option("--out-dir", out_dir, "Directory for output files");
  app.add_flag("--keep-history", flags.keep_history, "Retain decimated levels in memory");
  app.add_option("--decimation", decimation, "Keep every k-th level and node in grid dumps")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", flags.threads, "Worker threads for the node loop")->check(CLI::PositiveNumber);

  std::string run_config;
  auto* run_cmd = app.add_subcommand("run", "Run the finite-volume scheme");
  run_cmd->add_option("config", run_config, "Configuration file")->required();
  std::string linear_config;
  auto* linear_cmd = app.add_subcommand("linear", "Evaluate the linearized exact solution");
  linear_cmd->add_option("config", linear_config, "Configuration file")->required();
  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run property suites");
  verify_cmd->add_option("suite", suite, "lemmas | stationary | linear | all")
      ->required()
      ->check(CLI::IsMember({"lemmas", "stationary", "linear", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  flags.out_dir = out_dir;
  if (decimation > 0) flags.decimation = decimation;

  try {
    if (*run_cmd) return run_command(run_config, flags);
    if (*linear_cmd) return linear_command(linear_config, flags);
    if (*verify_cmd) return verify_command(suite);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const GridError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kOk;
}
