#include "ultrarad/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ultrarad::io {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_snapshot(const Level& level, std::ostream& out) {
  out << kSnapshotHeader << '\n';
  for (std::size_t j = 0; j < level.size(); ++j) {
    const ConservedState& s = level.states[j];
    const PrimitiveState prim = to_primitive(s);
    const EntropyPair entropy = entropy_pair(s);
    out << format_number(level.t) << ',' << format_number(level.x[j]) << ','
        << format_number(s.a) << ',' << format_number(s.b) << ',' << format_number(prim.p) << ','
        << format_number(prim.u) << ',' << format_number(three_velocity(prim.u)) << ','
        << format_number(flux_c(s)) << ',' << format_number(entropy.density) << '\n';
  }
}

void emit_snapshot(const Level& level, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_snapshot(level, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

double parse_field(const std::string& text, std::size_t line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::runtime_error("snapshot line " + std::to_string(line) + ": malformed number '" +
                             text + "'");
  }
  return value;
}

}  // namespace

Level read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSnapshotHeader) {
    throw std::runtime_error("snapshot: missing or unexpected header");
  }
  Level level;
  level.n = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) {
      throw std::runtime_error("snapshot line " + std::to_string(line_no) + ": expected 9 fields");
    }
    level.t = parse_field(fields[0], line_no);
    level.x.push_back(parse_field(fields[1], line_no));
    level.states.push_back({parse_field(fields[2], line_no), parse_field(fields[3], line_no)});
  }
  return level;
}

Level read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_snapshot(in);
}

GridDims spacetime_dims(const GridSpec& grid, int decimation) {
  const auto d = static_cast<std::size_t>(decimation);
  const auto levels = static_cast<std::size_t>(2 * grid.N);
  const auto nodes = static_cast<std::size_t>(grid.M + grid.N);
  return {(levels + d - 1) / d, (nodes + d - 1) / d};
}

namespace {

double field_value(const ConservedState& s, GridField field) {
  const PrimitiveState prim = to_primitive(s);
  return field == GridField::kPressure ? prim.p : three_velocity(prim.u);
}

double sample_level(const Level& level, double x, GridField field) {
  const double tol = 1e-9 * (level.x.back() + 1.0);
  if (x > level.x.back() + tol) return std::numeric_limits<double>::quiet_NaN();
  if (x <= level.x.front()) return field_value(level.states.front(), field);
  if (x >= level.x.back()) return field_value(level.states.back(), field);
  const auto it = std::upper_bound(level.x.begin(), level.x.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - level.x.begin());
  const double w = (x - level.x[j - 1]) / (level.x[j] - level.x[j - 1]);
  const double lo = field_value(level.states[j - 1], field);
  const double hi = field_value(level.states[j], field);
  return lo + w * (hi - lo);
}

}  // namespace

void write_spacetime_grid(const SimulationResult& result, int decimation, GridField field,
                          std::ostream& out) {
  if (decimation < 1) throw std::invalid_argument("decimation must be >= 1");
  const GridSpec& grid = result.grid;
  const GridDims dims = spacetime_dims(grid, decimation);

  std::vector<const Level*> rows;
  for (const auto& level : result.history) {
    if ((level.n - 1) % decimation == 0) rows.push_back(&level);
  }
  if (rows.size() != dims.rows) {
    throw std::runtime_error("space-time grid needs history retained with decimation " +
                             std::to_string(decimation));
  }

  out << (field == GridField::kPressure ? "t\\x(p)" : "t\\x(v)");
  for (std::size_t i = 0; i < dims.cols; ++i) {
    out << ',' << format_number(static_cast<double>(i * decimation) * grid.dx);
  }
  out << '\n';
  for (const Level* level : rows) {
    out << format_number(level->t);
    for (std::size_t i = 0; i < dims.cols; ++i) {
      const double x = static_cast<double>(i * decimation) * grid.dx;
      out << ',' << format_number(sample_level(*level, x, field));
    }
    out << '\n';
  }
}

void emit_spacetime_grid(const SimulationResult& result, int decimation, GridField field,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_spacetime_grid(result, decimation, field, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace ultrarad::io
