#ifndef ULTRARAD_PIECEWISE_HPP
#define ULTRARAD_PIECEWISE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ultrarad/state.hpp"

namespace ultrarad {

/// value(x) = offset + slope * x on one segment (absolute coordinates).
struct LinearPiece {
  double offset = 0.0;
  double slope = 0.0;

  double operator()(double x) const { return offset + slope * x; }
  friend bool operator==(const LinearPiece&, const LinearPiece&) = default;
};

/// Radial profile on [0, inf) that is linear between breakpoints.
///
/// Segment i covers [breaks[i], breaks[i+1]); the last one is unbounded.
/// breaks[0] must be 0. Evaluation is right-continuous; left_limit gives the
/// value approached from below.
class PiecewiseLinear {
 public:
  PiecewiseLinear() : PiecewiseLinear({0.0}, {LinearPiece{}}) {}
  PiecewiseLinear(std::vector<double> breaks, std::vector<LinearPiece> pieces);

  static PiecewiseLinear constant(double value);
  /// Step profile: `inner` on [0, radius), `outer` beyond.
  static PiecewiseLinear step(double radius, double inner, double outer);
  /// Linear interpolation through (xs[i], ys[i]); constant before xs[0] and
  /// after xs.back().
  static PiecewiseLinear interpolate(std::span<const double> xs, std::span<const double> ys);

  double operator()(double x) const;
  double left_limit(double x) const;

  std::size_t segment(double x) const;
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<LinearPiece>& pieces() const { return pieces_; }

  /// Breakpoints (excluding 0) where value or slope changes.
  std::vector<double> kinks() const;

 private:
  std::vector<double> breaks_;
  std::vector<LinearPiece> pieces_;
};

enum class Variables {
  kConserved,  ///< channels are (a0, b0)
  kPrimitive,  ///< channels are (p0, v0) with v the three-velocity
};

/// Radial initial data given in either variable set.
struct PiecewiseData {
  Variables variables = Variables::kConserved;
  PiecewiseLinear first;
  PiecewiseLinear second;

  static PiecewiseData conserved(PiecewiseLinear a0, PiecewiseLinear b0);
  static PiecewiseData primitive(PiecewiseLinear p0, PiecewiseLinear v0);

  /// Throws DomainError unless the data is admissible for every x >= 0.
  void validate() const;

  ConservedState sample(double x) const;
  ConservedState sample_left(double x) const;
};

/// Presets for the four numerical experiments.
PiecewiseData rest_state_data(double a0 = 3.0);
PiecewiseData outflow_data();         // p0 = 1, u0 = +1
PiecewiseData inflow_data();          // p0 = 1, u0 = -1
PiecewiseData bubble_data();          // p0 = 1 on [0,1], 0.1 beyond, v0 = 0
PiecewiseData imploding_shock_data(); // a0 = 1 on [0,1), 2 beyond, b0 = 0

}  // namespace ultrarad

#endif  // ULTRARAD_PIECEWISE_HPP
