#include "ultrarad/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ultrarad {

PiecewiseLinear::PiecewiseLinear(std::vector<double> breaks, std::vector<LinearPiece> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (breaks_.empty() || breaks_.size() != pieces_.size()) {
    throw std::invalid_argument("PiecewiseLinear: need one piece per breakpoint");
  }
  if (breaks_.front() != 0.0) {
    throw std::invalid_argument("PiecewiseLinear: first breakpoint must be 0");
  }
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(breaks_[i] > breaks_[i - 1])) {
      throw std::invalid_argument("PiecewiseLinear: breakpoints must be strictly ascending");
    }
  }
  for (const auto& piece : pieces_) {
    if (!std::isfinite(piece.offset) || !std::isfinite(piece.slope)) {
      throw std::invalid_argument("PiecewiseLinear: non-finite coefficient");
    }
  }
}

PiecewiseLinear PiecewiseLinear::constant(double value) {
  return PiecewiseLinear({0.0}, {LinearPiece{value, 0.0}});
}

PiecewiseLinear PiecewiseLinear::step(double radius, double inner, double outer) {
  return PiecewiseLinear({0.0, radius}, {LinearPiece{inner, 0.0}, LinearPiece{outer, 0.0}});
}

PiecewiseLinear PiecewiseLinear::interpolate(std::span<const double> xs,
                                             std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw std::invalid_argument("PiecewiseLinear::interpolate: size mismatch");
  }
  std::vector<double> breaks{0.0};
  std::vector<LinearPiece> pieces;
  const bool starts_at_zero = xs.front() == 0.0;
  if (!starts_at_zero) {
    if (xs.front() < 0.0) throw std::invalid_argument("interpolate: negative abscissa");
    pieces.push_back({ys.front(), 0.0});
    breaks.push_back(xs.front());
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    pieces.push_back({ys[i] - slope * xs[i], slope});
    breaks.push_back(xs[i + 1]);
  }
  pieces.push_back({ys.back(), 0.0});
  return PiecewiseLinear(std::move(breaks), std::move(pieces));
}

std::size_t PiecewiseLinear::segment(double x) const {
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

double PiecewiseLinear::operator()(double x) const { return pieces_[segment(x)](x); }

double PiecewiseLinear::left_limit(double x) const {
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
  const std::size_t i = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return pieces_[i](x);
}

std::vector<double> PiecewiseLinear::kinks() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(pieces_[i] == pieces_[i - 1])) out.push_back(breaks_[i]);
  }
  return out;
}

PiecewiseData PiecewiseData::conserved(PiecewiseLinear a0, PiecewiseLinear b0) {
  return {Variables::kConserved, std::move(a0), std::move(b0)};
}

PiecewiseData PiecewiseData::primitive(PiecewiseLinear p0, PiecewiseLinear v0) {
  return {Variables::kPrimitive, std::move(p0), std::move(v0)};
}

namespace {

ConservedState convert(Variables vars, double first, double second) {
  if (vars == Variables::kConserved) return {first, second};
  return to_conserved({first, four_velocity(second)});
}

}  // namespace

ConservedState PiecewiseData::sample(double x) const {
  return convert(variables, first(x), second(x));
}

ConservedState PiecewiseData::sample_left(double x) const {
  return convert(variables, first.left_limit(x), second.left_limit(x));
}

void PiecewiseData::validate() const {
  // Both channels are linear between consecutive merged breakpoints, and the
  // admissible set is convex in each variable pair, so endpoint checks suffice.
  std::vector<double> cuts = first.breaks();
  cuts.insert(cuts.end(), second.breaks().begin(), second.breaks().end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto check = [&](double f, double s, double x) {
    const bool ok = variables == Variables::kConserved ? std::abs(s) < f
                                                       : (f > 0.0 && std::abs(s) < 1.0);
    if (!ok) {
      throw DomainError("initial data inadmissible at x=" + std::to_string(x) +
                        (variables == Variables::kConserved ? " (need |b0| < a0)"
                                                            : " (need p0 > 0, |v0| < 1)"));
    }
  };
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double x = cuts[i];
    check(first(x), second(x), x);
    if (i > 0) check(first.left_limit(x), second.left_limit(x), x);
  }

  const LinearPiece& f = first.pieces().back();
  const LinearPiece& s = second.pieces().back();
  const bool tail_ok = variables == Variables::kConserved
                           ? (f.slope - s.slope >= 0.0 && f.slope + s.slope >= 0.0)
                           : (f.slope >= 0.0 && s.slope == 0.0);
  if (!tail_ok) throw DomainError("initial data leaves the admissible set as x -> infinity");
}

PiecewiseData rest_state_data(double a0) {
  return PiecewiseData::conserved(PiecewiseLinear::constant(a0), PiecewiseLinear::constant(0.0));
}

PiecewiseData outflow_data() {
  return PiecewiseData::conserved(PiecewiseLinear::constant(7.0),
                                  PiecewiseLinear::constant(4.0 * std::sqrt(2.0)));
}

PiecewiseData inflow_data() {
  return PiecewiseData::conserved(PiecewiseLinear::constant(7.0),
                                  PiecewiseLinear::constant(-4.0 * std::sqrt(2.0)));
}

PiecewiseData bubble_data() {
  return PiecewiseData::primitive(PiecewiseLinear::step(1.0, 1.0, 0.1),
                                  PiecewiseLinear::constant(0.0));
}

PiecewiseData imploding_shock_data() {
  return PiecewiseData::conserved(PiecewiseLinear::step(1.0, 1.0, 2.0),
                                  PiecewiseLinear::constant(0.0));
}

}  // namespace ultrarad
