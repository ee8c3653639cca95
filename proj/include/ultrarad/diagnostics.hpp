#ifndef ULTRARAD_DIAGNOSTICS_HPP
#define ULTRARAD_DIAGNOSTICS_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ultrarad/scheme.hpp"
#include "ultrarad/state.hpp"

namespace ultrarad::diagnostics {

/// No shock could be located (empty window, or no jump stands out).
class NoShockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pressure and three-velocity along one level.
struct Profile {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> p;
  std::vector<double> v;
};

Profile profile(const Level& level);

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

enum class JumpMeasure {
  kPressure,     ///< |p_{j+1} - p_j|
  kLogPressure,  ///< |ln p_{j+1} - ln p_j|, for shocks running into near-vacuum
};

/// Midpoint of the adjacent node pair with the largest jump inside the
/// window. Without a window, the level minus three cells at each end is
/// searched. Throws NoShockError when the largest jump is not at least ten
/// times the median jump.
double detect_shock(const Level& snapshot, std::optional<Window> window = std::nullopt,
                    JumpMeasure measure = JumpMeasure::kPressure);

struct ShockTrack {
  std::vector<double> times;
  std::vector<double> positions;
  double fitted_speed = 0.0;
  double intercept = 0.0;
  double fit_residual = 0.0;  ///< RMS deviation from the fitted line
};

/// Least-squares line through the track; fills fitted_speed, intercept and
/// fit_residual and returns the speed. Needs at least five points.
double shock_speed(ShockTrack& track);

/// A single shock between these states satisfies the entropy inequality
/// iff the four-velocity drops across it (u_left > u_right).
bool shock_admissible(const ConservedState& left, const ConservedState& right);

/// States `offset` nodes below and above a detected shock position.
std::pair<ConservedState, ConservedState> shock_sides(const Level& level, double position,
                                                      int offset = 3);

struct EntropyProduction {
  std::vector<double> x;       ///< apex position of each triangle
  std::vector<double> values;  ///< weak-form entropy functional; negative = production
  double min_value = 0.0;
  double max_value = 0.0;
};

/// Discrete contour integral of (x^2 eta, x^2 psi) around each update
/// triangle between two consecutive levels, taken clockwise so that it equals
/// the weak entropy functional with the triangle's indicator as test
/// function. Admissible solutions give values <= 0.
EntropyProduction entropy_production(const Level& prev, const Level& next, const GridSpec& grid);

struct SelfSimilarity {
  double p_error = 0.0;  ///< L1 distance of p over zeta = x/t
  double v_error = 0.0;
  double zeta_lo = 0.0;
  double zeta_hi = 0.0;

  double total() const { return p_error + v_error; }
};

SelfSimilarity self_similarity_error(const Level& first, const Level& second);

struct EnergyBalance {
  std::vector<double> times;
  std::vector<double> energy;     ///< int_0^R a x^2 dx per level
  std::vector<double> residuals;  ///< dE/dt + R^2 b(t, R), centered
  double max_normalized = 0.0;    ///< max |residual| / max |E|
};

/// Accumulates the energy balance over a radius R level by level; usable as a
/// run observer.
class EnergyBalanceTracker {
 public:
  EnergyBalanceTracker(const GridSpec& grid, double radius);

  void observe(const Level& level);
  EnergyBalance result() const;

 private:
  GridSpec grid_;
  double radius_;
  std::vector<double> times_;
  std::vector<double> energy_;
  std::vector<double> boundary_flux_;
};

/// Energy balance over consecutive levels (n, n+1, ...).
EnergyBalance energy_balance(std::span<const Level> levels, const GridSpec& grid, double radius);

struct ArrivalEstimate {
  double threshold_time = 0.0;     ///< first time the position is below 2 dx
  double extrapolated_time = 0.0;  ///< line through the last points, at x = 0
  std::size_t points_used = 0;
};

/// Tracks an inward-running shock level by level (odd levels only) and
/// estimates when it reaches the axis.
class InwardShockTracker {
 public:
  InwardShockTracker(const GridSpec& grid, double t_begin, double t_end, Window window,
                     JumpMeasure measure = JumpMeasure::kLogPressure);

  void observe(const Level& level);

  const ShockTrack& track() const { return track_; }
  bool arrived() const { return arrived_; }
  /// Throws NoShockError when the shock never got below 2 dx.
  ArrivalEstimate arrival(std::size_t fit_points = 10) const;

 private:
  GridSpec grid_;
  double t_begin_;
  double t_end_;
  Window window_;
  JumpMeasure measure_;
  ShockTrack track_;
  bool arrived_ = false;
  double threshold_time_ = 0.0;
};

}  // namespace ultrarad::diagnostics

#endif  // ULTRARAD_DIAGNOSTICS_HPP
