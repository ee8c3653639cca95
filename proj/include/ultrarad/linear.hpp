#ifndef ULTRARAD_LINEAR_HPP
#define ULTRARAD_LINEAR_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ultrarad/piecewise.hpp"
#include "ultrarad/state.hpp"

namespace ultrarad::linear {

/// Even primitives A0(x) = int_0^x s a0(s) ds and B0(x) = int_0^x b0(s) ds,
/// exact for piecewise-linear a0, b0.
class Primitives {
 public:
  explicit Primitives(const PiecewiseData& data);

  double A(double x) const;
  double B(double x) const;

  /// A(hi) - A(lo) and B(hi) - B(lo), integrated directly.
  double A_difference(double lo, double hi) const;
  double B_difference(double lo, double hi) const;

  /// Even extension of a0 and odd extension of b0 to the whole line.
  double a0(double x) const;
  double b0(double x) const;

 private:
  PiecewiseLinear a0_;
  PiecewiseLinear b0_;
  std::vector<double> A_at_break_;
  std::vector<double> B_at_break_;
};

Primitives build_primitives(const PiecewiseData& data);

/// Closed-form solution of the linearized radial system for piecewise-linear
/// data in (a, b) variables.
class LinearSolution {
 public:
  explicit LinearSolution(const PiecewiseData& data);

  /// Requires t >= 0 and x >= kMinRadius.
  ConservedState operator()(double t, double x) const;

  /// Extrapolates b(t, x) to x -> 0 from the given radii (Neville). Refuses
  /// with DomainError when a kink of the data lies inside the domain of
  /// dependence [0, t/sqrt(3) + max radius].
  double boundary_limit(double t, std::span<const double> radii) const;

  const Primitives& primitives() const { return primitives_; }

  static constexpr double kMinRadius = 1e-10;

 private:
  Primitives primitives_;
  std::vector<double> kinks_;
};

ConservedState eval_linear(double t, double x, const PiecewiseData& data);

double boundary_limit(double t, const PiecewiseData& data,
                      std::span<const double> radii = std::span<const double>{});

/// Rankine-Hugoniot speed db/da of the linearized system.
double rh_speed_linear(const ConservedState& left, const ConservedState& right);

enum class Region { kOmega1, kOmega2, kOmega3, kOmega4, kShockLine };

struct ImplodingSample {
  Region region = Region::kShockLine;
  std::optional<ConservedState> state;  ///< empty on a shock line
};

/// Piecewise closed form for a0 = 1 (|x| < 1), 2 (|x| >= 1), b0 = 0.
ImplodingSample imploding_shock_exact(double t, double x);

enum class ShockLine {
  kInward,     ///< x1 = 1 - t/sqrt(3), 0 < t < sqrt(3)
  kReflected,  ///< x2 = t/sqrt(3) - 1, t > sqrt(3)
  kOutward,    ///< x3 = 1 + t/sqrt(3)
};

struct ShockSides {
  double position = 0.0;
  ConservedState lower;  ///< limit from smaller x
  ConservedState upper;  ///< limit from larger x
};

/// One-sided limits of the imploding-shock solution across a shock line.
ShockSides imploding_shock_sides(double t, ShockLine line);

}  // namespace ultrarad::linear

#endif  // ULTRARAD_LINEAR_HPP
