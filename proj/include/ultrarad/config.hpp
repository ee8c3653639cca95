#ifndef ULTRARAD_CONFIG_HPP
#define ULTRARAD_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ultrarad/piecewise.hpp"
#include "ultrarad/scheme.hpp"

namespace ultrarad {

/// Configuration problem; `line()` is 0 when it concerns the file as a whole.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class Preset {
  kExample1,        ///< rest state a0 = 3, b0 = 0
  kExample2,        ///< a0 = 7, b0 = 4 sqrt 2
  kExample3,        ///< a0 = 7, b0 = -4 sqrt 2
  kExample4,        ///< bubble: p0 = 1 on [0,1], 0.1 beyond, v0 = 0
  kImplodingShock,  ///< a0 = 1 on [0,1), 2 beyond, b0 = 0
  kCustom,
};

const char* preset_name(Preset preset);

struct OutputFlags {
  bool snapshot_csv = true;
  bool spacetime_grid = false;
  bool diagnostics = true;
};

/// Sampling of the analytic solution for the `linear` command.
struct LinearSampling {
  std::vector<double> times;
  double x_min = 0.01;
  double x_max = 2.0;
  int samples = 200;
};

struct RunConfig {
  Preset preset = Preset::kExample1;
  double t_star = 1.0;
  double x_star = 1.0;
  int N = 750;
  std::vector<double> snapshot_times;
  OutputFlags outputs;
  int decimation = 10;
  std::optional<PiecewiseData> custom;
  LinearSampling linear;

  PiecewiseData initial_data() const;
  GridSpec grid() const { return build_grid(t_star, x_star, N); }
};

/// Parses `key = value` lines, `#` comments and `[segment]` blocks.
///
///   preset = custom            # example1..4, imploding_shock, custom
///   variables = pv             # pv (p, v) or ab (a, b) for custom data
///   t_star = 1
///   x_star = 1
///   N = 750
///   snapshot_times = 0.5, 1
///   [segment]
///   from = 0
///   p = 1                      # value at `from`, or "value, slope"
///   v = 0
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace ultrarad

#endif  // ULTRARAD_CONFIG_HPP
