#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(ULTRARAD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ultrarad_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("run writes snapshots and a report") {
  const fs::path dir = scratch("run");
  const fs::path cfg = write_file(dir / "ex3.cfg",
                                  "preset = example3\nt_star = 1\nx_star = 1\nN = 100\nsnapshot_times = 0.5, 1\n");
  REQUIRE(cli("--out-dir " + (dir / "out").string() + " run " + cfg.string()) == 0);
  CHECK(fs::exists(dir / "out" / "snapshot_t0.5.csv"));
  CHECK(fs::exists(dir / "out" / "snapshot_t1.csv"));
  const auto report = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report["stability"]["violations"] == 0);
  CHECK(report["snapshots"].size() == 2);
  CHECK(report["snapshots"][1]["shock"]["admissible"] == true);
}

TEST_CASE("outputs are identical across thread counts") {
  const fs::path dir = scratch("threads");
  const fs::path cfg = write_file(dir / "ex4.cfg",
                                  "preset = example4\nt_star = 5\nx_star = 2\nN = 150\nsnapshot_times = 2, 5\n"
                                  "spacetime_grid = true\ndecimation = 5\n");
  REQUIRE(cli("--threads 1 --out-dir " + (dir / "a").string() + " run " + cfg.string()) == 0);
  REQUIRE(cli("--threads 3 --out-dir " + (dir / "b").string() + " run " + cfg.string()) == 0);
  REQUIRE(cli("--threads 1 --out-dir " + (dir / "c").string() + " run " + cfg.string()) == 0);
  for (const char* name : {"snapshot_t2.csv", "snapshot_t5.csv", "spacetime_p.csv", "spacetime_v.csv"}) {
    const std::string a = slurp(dir / "a" / name);
    CHECK(!a.empty());
    CHECK(a == slurp(dir / "b" / name));
    CHECK(a == slurp(dir / "c" / name));
  }
}

TEST_CASE("linear evaluation") {
  const fs::path dir = scratch("linear");
  const fs::path cfg = write_file(dir / "imp.cfg",
                                  "preset = imploding_shock\nt_star = 1\nx_star = 2\ntimes = 0.5, 1\nsamples = 5\n");
  REQUIRE(cli("--out-dir " + dir.string() + " linear " + cfg.string()) == 0);
  std::stringstream ss(slurp(dir / "linear.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 1 + 2 * 5);

  const fs::path bubble = write_file(dir / "bubble.cfg", "preset = example4\nt_star = 5\nx_star = 2\n");
  CHECK(cli("--out-dir " + dir.string() + " linear " + bubble.string()) == 1);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("codes");
  CHECK(cli("verify stationary") == 0);
  CHECK(cli("verify nonsense") == 1);
  CHECK(cli("") == 1);
  CHECK(cli("run " + (dir / "missing.cfg").string()) == 1);
  const fs::path bad = write_file(dir / "bad.cfg", "preset = example1\nt_star = 2\nx_star = 1\nN = 1\n");
  CHECK(cli("run " + bad.string()) == 1);
  const fs::path empty = write_file(dir / "empty.cfg", "");
  CHECK(cli("run " + empty.string()) == 1);
}

}
