#include <doctest.h>

#include <cmath>
#include <string>

#include "ultrarad/config.hpp"

using namespace ultrarad;

namespace {

// Line number and message of the error raised for `text`.
std::pair<std::size_t, std::string> config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return {e.line(), e.what()};
  }
  FAIL("expected a ConfigError for: " << text);
  return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_SUITE("config") {

TEST_CASE("presets") {
  const RunConfig ex2 = parse_config("preset = example2\nN = 3000\nt_star = 1\nx_star = 1");
  CHECK(ex2.preset == Preset::kExample2);
  CHECK(ex2.N == 3000);
  CHECK(ex2.snapshot_times == std::vector<double>{1.0});
  const PiecewiseData d2 = ex2.initial_data();
  CHECK(d2.sample(0.3).a == doctest::Approx(7.0));
  CHECK(d2.sample(0.3).b == doctest::Approx(4.0 * std::sqrt(2.0)));
  CHECK(ex2.grid().M == 3000);

  const RunConfig ex4 = parse_config("preset = example4\nt_star = 5\nx_star = 2");
  CHECK(ex4.N == 750);
  CHECK(ex4.snapshot_times == std::vector<double>{5.0});
  const PiecewiseData d4 = ex4.initial_data();
  CHECK(d4.variables == Variables::kPrimitive);
  CHECK(d4.first(0.5) == 1.0);
  CHECK(d4.first(1.5) == 0.1);
  CHECK(d4.second(0.5) == 0.0);
  CHECK(d4.sample(0.5).a == doctest::Approx(3.0));
  CHECK(d4.sample(1.5).a == doctest::Approx(0.3));
}

TEST_CASE("full syntax") {
  const RunConfig c = parse_config(R"(# bubble with a moving shell
preset = custom
variables = pv
t_star = 1   # end time
x_star = 1
N = 100
snapshot_times = 0.25, 0.5,1
spacetime_grid = true
decimation = 4

[segment]
from = 0
p = 1
v = 0
[segment]
from = 0.5
p = 2, 1
v = 0.25
)");
  CHECK(c.preset == Preset::kCustom);
  CHECK(c.snapshot_times == std::vector<double>{0.25, 0.5, 1.0});
  CHECK(c.outputs.spacetime_grid);
  CHECK(c.outputs.snapshot_csv);
  CHECK(c.decimation == 4);
  const PiecewiseData d = c.initial_data();
  CHECK(d.first(0.25) == 1.0);
  CHECK(d.first(0.75) == doctest::Approx(2.25));
  CHECK(d.second(0.75) == 0.25);

  const RunConfig ab = parse_config("preset = custom\nvariables = ab\nt_star = 1\nx_star = 1\n[segment]\nfrom = 0\na = 3, 1\nb = 0, 1\n");
  CHECK(ab.initial_data().variables == Variables::kConserved);
  CHECK(ab.initial_data().second(0.5) == 0.5);
}

TEST_CASE("linear sampling keys") {
  const RunConfig c = parse_config("preset = imploding_shock\nt_star = 2\nx_star = 2\ntimes = 0.5, 1\nx_min = 0.05\nx_max = 2.5\nsamples = 11\n");
  CHECK(c.linear.times == std::vector<double>{0.5, 1.0});
  CHECK(c.linear.samples == 11);
  CHECK(c.linear.x_max == 2.5);
}

TEST_CASE("errors carry line numbers") {
  auto [line, msg] = config_error("");
  CHECK(line == 0);
  CHECK(contains(msg, "preset"));
  CHECK(contains(msg, "t_star"));
  CHECK(contains(msg, "x_star"));

  std::tie(line, msg) = config_error("preset = example1\nt_star = 1\nspeed = 3\n");
  CHECK(line == 3);
  CHECK(contains(msg, "unknown key"));

  std::tie(line, msg) = config_error("preset = example1\nt_star = 1.2.3\nx_star = 1\n");
  CHECK(line == 2);
  CHECK(contains(msg, "malformed number"));

  std::tie(line, msg) = config_error("preset = example1\nt_star = 2\nx_star = 1\nN = 1\n");
  CHECK(line == 4);
  CHECK(contains(msg, "N * x_star >= t_star"));

  std::tie(line, msg) = config_error("preset = example9\nt_star = 2\nx_star = 1\n");
  CHECK(line == 1);

  std::tie(line, msg) = config_error("preset = example1\nt_star = 1\nx_star = 1\nsnapshot_times = 0.5, 2\n");
  CHECK(line == 4);
  CHECK(contains(msg, "snapshot time"));

  std::tie(line, msg) = config_error("preset = custom\nt_star = 1\nx_star = 1\n[segment]\nfrom = 0\np = 1\nv = 1.0\n");
  CHECK(line == 4);
  CHECK(contains(msg, "|v| < 1"));

  std::tie(line, msg) = config_error("preset = custom\nvariables = ab\nt_star = 1\nx_star = 1\n[segment]\nfrom = 0\na = 1\nb = 0\n[segment]\nfrom = 1\na = 1\nb = 1.5\n");
  CHECK(line == 9);
  CHECK(contains(msg, "|b| < a"));

  std::tie(line, msg) = config_error("preset = custom\nt_star = 1\nx_star = 1\n[segment]\nfrom = 0.5\np = 1\nv = 0\n");
  CHECK(line == 4);

  std::tie(line, msg) = config_error("preset = custom\nt_star = 1\nx_star = 1\n[segment]\nfrom = 0\np = 1\n");
  CHECK(line == 4);

  std::tie(line, msg) = config_error("preset = example1\nt_star = 1\nx_star = 1\n[segment]\nfrom = 0\n");
  CHECK(line == 4);

  std::tie(line, msg) = config_error("preset = example1\npreset = example2\n");
  CHECK(line == 2);

  std::tie(line, msg) = config_error("preset = example1\nt_star = 1\nx_star = 1\nN = 3.5\n");
  CHECK(line == 4);
}

}
