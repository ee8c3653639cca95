#include "ultrarad/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ultrarad::linear {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kLineTolerance = 1e-12;

// Cumulative integrals of s^k f(s) at every breakpoint of f (k = 0 or 1).
std::vector<double> cumulative(const PiecewiseLinear& f, int moment) {
  const auto& br = f.breaks();
  std::vector<double> out(br.size(), 0.0);
  for (std::size_t i = 1; i < br.size(); ++i) {
    const LinearPiece& piece = f.pieces()[i - 1];
    const double lo = br[i - 1];
    const double hi = br[i];
    double integral = 0.0;
    if (moment == 0) {
      integral = piece.offset * (hi - lo) + piece.slope * (hi * hi - lo * lo) / 2.0;
    } else {
      integral = piece.offset * (hi * hi - lo * lo) / 2.0 +
                 piece.slope * (hi * hi * hi - lo * lo * lo) / 3.0;
    }
    out[i] = out[i - 1] + integral;
  }
  return out;
}

// int_u^v s^k f(s) ds for 0 <= u <= v, summed piece by piece with factored
// differences so nothing large is subtracted.
double integral_between(const PiecewiseLinear& f, int moment, double u, double v) {
  const auto& br = f.breaks();
  double total = 0.0;
  for (std::size_t i = f.segment(u); i < br.size(); ++i) {
    const double lo = std::max(u, br[i]);
    const double hi = i + 1 < br.size() ? std::min(v, br[i + 1]) : v;
    if (hi <= lo) {
      if (br[i] >= v) break;
      continue;
    }
    const LinearPiece& piece = f.pieces()[i];
    const double w = hi - lo;
    if (moment == 0) {
      total += w * (piece.offset + piece.slope * (hi + lo) / 2.0);
    } else {
      total += w * (piece.offset * (hi + lo) / 2.0 + piece.slope * (hi * hi + hi * lo + lo * lo) / 3.0);
    }
  }
  return total;
}

}  // namespace

Primitives::Primitives(const PiecewiseData& data) : a0_(data.first), b0_(data.second) {
  if (data.variables != Variables::kConserved) {
    throw std::invalid_argument("linear solution needs data in (a, b) variables");
  }
  A_at_break_ = cumulative(a0_, 1);
  B_at_break_ = cumulative(b0_, 0);
}

double Primitives::A(double x) const {
  x = std::abs(x);
  const std::size_t i = a0_.segment(x);
  const double lo = a0_.breaks()[i];
  const LinearPiece& piece = a0_.pieces()[i];
  return A_at_break_[i] + piece.offset * (x * x - lo * lo) / 2.0 +
         piece.slope * (x * x * x - lo * lo * lo) / 3.0;
}

double Primitives::B(double x) const {
  x = std::abs(x);
  const std::size_t i = b0_.segment(x);
  const double lo = b0_.breaks()[i];
  const LinearPiece& piece = b0_.pieces()[i];
  return B_at_break_[i] + piece.offset * (x - lo) + piece.slope * (x * x - lo * lo) / 2.0;
}

double Primitives::A_difference(double lo, double hi) const {
  // A is even, so A(hi) - A(lo) only involves [|lo|, |hi|].
  const double u = std::abs(lo);
  const double v = std::abs(hi);
  return u <= v ? integral_between(a0_, 1, u, v) : -integral_between(a0_, 1, v, u);
}

double Primitives::B_difference(double lo, double hi) const {
  const double u = std::abs(lo);
  const double v = std::abs(hi);
  return u <= v ? integral_between(b0_, 0, u, v) : -integral_between(b0_, 0, v, u);
}

double Primitives::a0(double x) const { return a0_(std::abs(x)); }

double Primitives::b0(double x) const {
  if (x < 0.0) return -b0_(-x);
  return b0_(x);
}

Primitives build_primitives(const PiecewiseData& data) { return Primitives(data); }

LinearSolution::LinearSolution(const PiecewiseData& data) : primitives_(data) {
  data.validate();
  kinks_ = data.first.kinks();
  const auto b_kinks = data.second.kinks();
  kinks_.insert(kinks_.end(), b_kinks.begin(), b_kinks.end());
  // The even extension of a0 has a kink at 0 unless a0 starts flat; the odd
  // extension of b0 jumps at 0 unless b0(0) = 0.
  if (data.first.pieces().front().slope != 0.0 || data.second.pieces().front().offset != 0.0) {
    kinks_.push_back(0.0);
  }
  std::sort(kinks_.begin(), kinks_.end());
}

ConservedState LinearSolution::operator()(double t, double x) const {
  if (!(x >= kMinRadius)) {
    throw DomainError("eval_linear: radius below 1e-10, use boundary_limit");
  }
  if (!(t >= 0.0)) throw DomainError("eval_linear: time must be non-negative");
  const Primitives& P = primitives_;
  const double xp = x + t / kSqrt3;
  const double xm = x - t / kSqrt3;
  // Evaluate at the centre and half-width of the rounded characteristic
  // feet; the 1/x^2 factors would otherwise amplify their rounding.
  x = 0.5 * (xp + xm);
  const double s = 0.5 * (xp - xm);
  const double ap = xp * P.a0(xp);
  const double am = xm * P.a0(xm);
  const double bp = xp * P.b0(xp);
  const double bm = xm * P.b0(xm);
  // The plus and minus characteristic terms are paired so that primitives
  // enter only through differences, which are integrated directly.
  const double dA = P.A_difference(xm, xp);
  const double dB = P.B_difference(xm, xp);

  const double a = (ap + am) / (2.0 * x) - kSqrt3 / (2.0 * x) * ((bp - bm) + dB);
  const double b = (dA / x - (ap - am)) / (2.0 * kSqrt3 * x) + ((bp + bm) - s / x * dB) / (2.0 * x);
  return {a, b};
}

double LinearSolution::boundary_limit(double t, std::span<const double> radii) const {
  static constexpr double kDefaultRadii[] = {1e-2, 5e-3, 2.5e-3};
  if (radii.empty()) radii = kDefaultRadii;
  if (radii.size() < 2) throw std::invalid_argument("boundary_limit: need at least two radii");
  if (!(t > 0.0)) throw DomainError("boundary_limit: time must be positive");

  const double reach = t / kSqrt3 + *std::max_element(radii.begin(), radii.end());
  for (double k : kinks_) {
    if (k <= reach) {
      throw DomainError("boundary_limit: data not C2 inside the domain of dependence (kink at x=" +
                        std::to_string(k) + ")");
    }
  }

  // Neville's scheme evaluated at x = 0.
  std::vector<double> x(radii.begin(), radii.end());
  std::vector<double> table(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) table[i] = (*this)(t, x[i]).b;
  for (std::size_t level = 1; level < x.size(); ++level) {
    for (std::size_t i = 0; i + level < x.size(); ++i) {
      const double xi = x[i];
      const double xj = x[i + level];
      table[i] = (xj * table[i] - xi * table[i + 1]) / (xj - xi);
    }
  }
  return table[0];
}

ConservedState eval_linear(double t, double x, const PiecewiseData& data) {
  return LinearSolution(data)(t, x);
}

double boundary_limit(double t, const PiecewiseData& data, std::span<const double> radii) {
  return LinearSolution(data).boundary_limit(t, radii);
}

double rh_speed_linear(const ConservedState& left, const ConservedState& right) {
  const double da = right.a - left.a;
  if (da == 0.0) throw DomainError("rh_speed_linear: degenerate jump with equal a");
  return (right.b - left.b) / da;
}

namespace {

ConservedState omega2_state(double t, double x) {
  return {1.5 + t / (2.0 * kSqrt3 * x), (t * t - 3.0 * (1.0 + x * x)) / (12.0 * kSqrt3 * x * x)};
}

}  // namespace

ImplodingSample imploding_shock_exact(double t, double x) {
  if (!(t > 0.0) || !(x > 0.0)) throw DomainError("imploding_shock_exact: need t, x > 0");
  const double s = t / kSqrt3;
  const bool near_inward = s < 1.0 && std::abs(x - (1.0 - s)) <= kLineTolerance;
  const bool near_reflected = s > 1.0 && std::abs(x - (s - 1.0)) <= kLineTolerance;
  const bool near_outward = std::abs(x - (1.0 + s)) <= kLineTolerance;
  if (near_inward || near_reflected || near_outward) return {Region::kShockLine, std::nullopt};

  if (x <= 1.0 - s) return {Region::kOmega1, ConservedState{1.0, 0.0}};
  if (x <= s - 1.0) return {Region::kOmega4, ConservedState{2.0, 0.0}};
  if (x > 1.0 + s) return {Region::kOmega3, ConservedState{2.0, 0.0}};
  return {Region::kOmega2, omega2_state(t, x)};
}

ShockSides imploding_shock_sides(double t, ShockLine line) {
  const double s = t / kSqrt3;
  switch (line) {
    case ShockLine::kInward: {
      if (!(t > 0.0 && s < 1.0)) throw DomainError("inward shock exists only for 0 < t < sqrt(3)");
      const double x = 1.0 - s;
      return {x, ConservedState{1.0, 0.0}, omega2_state(t, x)};
    }
    case ShockLine::kReflected: {
      if (!(s > 1.0)) throw DomainError("reflected shock exists only for t > sqrt(3)");
      const double x = s - 1.0;
      return {x, ConservedState{2.0, 0.0}, omega2_state(t, x)};
    }
    case ShockLine::kOutward: {
      if (!(t > 0.0)) throw DomainError("outward shock needs t > 0");
      const double x = 1.0 + s;
      return {x, omega2_state(t, x), ConservedState{2.0, 0.0}};
    }
  }
  throw std::logic_error("unknown shock line");
}

}  // namespace ultrarad::linear
