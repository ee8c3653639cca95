#ifndef ULTRARAD_IO_HPP
#define ULTRARAD_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ultrarad/scheme.hpp"

namespace ultrarad::io {

inline constexpr const char* kSnapshotHeader = "t,x,a,b,p,u,v,c,entropy_density";

/// Shortest round-trip-safe text form: %.17g.
std::string format_number(double value);

/// One row per node with the derived fields; LF line endings.
void write_snapshot(const Level& level, std::ostream& out);
void emit_snapshot(const Level& level, const std::filesystem::path& path);

/// Reads t, x, a and b back from a snapshot CSV. The level index is not
/// stored in the file and is returned as 0.
Level read_snapshot(std::istream& in);
Level read_snapshot(const std::filesystem::path& path);

enum class GridField { kPressure, kVelocity };

struct GridDims {
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// (ceil(2N / d), ceil((M + N) / d)).
GridDims spacetime_dims(const GridSpec& grid, int decimation);

/// Space-time matrix of p or v: first row holds the x axis, first column the
/// time axis. Row k is level 1 + k d, column i is x = i d dx; values are
/// interpolated along the level and written as nan outside the trapezoid.
/// Throws std::runtime_error unless the run kept history at this decimation.
void write_spacetime_grid(const SimulationResult& result, int decimation, GridField field,
                          std::ostream& out);
void emit_spacetime_grid(const SimulationResult& result, int decimation, GridField field,
                         const std::filesystem::path& path);

}  // namespace ultrarad::io

#endif  // ULTRARAD_IO_HPP
