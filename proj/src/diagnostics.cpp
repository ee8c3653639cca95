#include "ultrarad/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ultrarad::diagnostics {

Profile profile(const Level& level) {
  Profile out;
  out.t = level.t;
  out.x = level.x;
  out.p.reserve(level.size());
  out.v.reserve(level.size());
  for (const auto& s : level.states) {
    const PrimitiveState prim = to_primitive(s);
    out.p.push_back(prim.p);
    out.v.push_back(three_velocity(prim.u));
  }
  return out;
}

double detect_shock(const Level& snapshot, std::optional<Window> window, JumpMeasure measure) {
  const std::size_t n = snapshot.size();
  std::size_t first = 0;
  std::size_t last = 0;  // one past the final node
  if (window) {
    if (!(window->hi > window->lo)) throw NoShockError("detect_shock: empty window");
    first = static_cast<std::size_t>(
        std::lower_bound(snapshot.x.begin(), snapshot.x.end(), window->lo) - snapshot.x.begin());
    last = static_cast<std::size_t>(
        std::upper_bound(snapshot.x.begin(), snapshot.x.end(), window->hi) - snapshot.x.begin());
  } else if (n > 6) {
    first = 3;
    last = n - 3;
  }
  if (last < first + 3) throw NoShockError("detect_shock: fewer than 3 nodes in the window");

  std::vector<double> p(last - first);
  for (std::size_t j = first; j < last; ++j) p[j - first] = pressure(snapshot.states[j]);
  std::vector<double> jumps(p.size() - 1);
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    jumps[j] = measure == JumpMeasure::kPressure ? std::abs(p[j + 1] - p[j])
                                                 : std::abs(std::log(p[j + 1] / p[j]));
  }
  const auto max_it = std::max_element(jumps.begin(), jumps.end());
  const double max_jump = *max_it;
  const std::size_t at = static_cast<std::size_t>(max_it - jumps.begin());

  std::vector<double> sorted = jumps;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (!(max_jump > 0.0) || max_jump < 10.0 * median) {
    throw NoShockError("detect_shock: no jump stands out (max " + std::to_string(max_jump) +
                       ", median " + std::to_string(median) + ")");
  }
  return 0.5 * (snapshot.x[first + at] + snapshot.x[first + at + 1]);
}

double shock_speed(ShockTrack& track) {
  const std::size_t n = track.times.size();
  if (n < 5 || track.positions.size() != n) {
    throw std::invalid_argument("shock_speed: need at least five tracked points");
  }
  double mt = 0.0;
  double mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += track.times[i];
    mx += track.positions[i];
  }
  mt /= n;
  mx /= n;
  double stt = 0.0;
  double stx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (track.times[i] - mt) * (track.times[i] - mt);
    stx += (track.times[i] - mt) * (track.positions[i] - mx);
  }
  if (stt == 0.0) throw std::invalid_argument("shock_speed: all track times coincide");
  track.fitted_speed = stx / stt;
  track.intercept = mx - track.fitted_speed * mt;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = track.positions[i] - (track.intercept + track.fitted_speed * track.times[i]);
    ss += r * r;
  }
  track.fit_residual = std::sqrt(ss / n);
  return track.fitted_speed;
}

bool shock_admissible(const ConservedState& left, const ConservedState& right) {
  return to_primitive(left).u > to_primitive(right).u;
}

std::pair<ConservedState, ConservedState> shock_sides(const Level& level, double position,
                                                      int offset) {
  const auto above = std::upper_bound(level.x.begin(), level.x.end(), position);
  const auto j_hi = static_cast<long>(above - level.x.begin());
  const long lo = j_hi - 1 - offset;
  const long hi = j_hi + offset;
  if (lo < 0 || hi >= static_cast<long>(level.size())) {
    throw std::out_of_range("shock_sides: offset leaves the level");
  }
  return {level.states[lo], level.states[hi]};
}

EntropyProduction entropy_production(const Level& prev, const Level& next, const GridSpec& grid) {
  if (next.n != prev.n + 1 || static_cast<int>(prev.size()) != grid.nodes_at(prev.n) ||
      static_cast<int>(next.size()) != grid.nodes_at(next.n)) {
    throw std::invalid_argument("entropy_production: levels are not consecutive on this grid");
  }
  const double dt = grid.dt;
  const double dx = grid.dx;
  const double lambda = grid.lambda;
  const bool odd = prev.n % 2 == 1;

  std::vector<EntropyPair> old_pairs(prev.size());
  for (std::size_t j = 0; j < prev.size(); ++j) old_pairs[j] = entropy_pair(prev.states[j]);

  EntropyProduction out;
  out.x = next.x;
  out.values.resize(next.size());
  out.min_value = std::numeric_limits<double>::infinity();
  out.max_value = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < next.size(); ++j) {
    EntropyPair minus;
    EntropyPair plus;
    if (odd) {
      plus = old_pairs[j];
      minus = j == 0 ? EntropyPair{plus.density, -plus.flux} : old_pairs[j - 1];
    } else {
      minus = old_pairs[j];
      plus = old_pairs[j + 1];
    }
    const EntropyPair apex = entropy_pair(next.states[j]);
    const double x_bar = next.x[j];
    const double s = x_bar * x_bar + dx * dx / 3.0;
    const double i0 = apex.density * 4.0 * lambda * dt * s;
    const double i1 = -2.0 * (lambda * plus.density - plus.flux) * dt * (s + x_bar * dx);
    const double i2 = -2.0 * (lambda * minus.density + minus.flux) * dt * (s - x_bar * dx);
    // i0 + i1 + i2 runs counter-clockwise in the (t, x) plane and equals the
    // integral of d_t(x^2 eta) + d_x(x^2 psi), which the entropy inequality
    // makes non-negative. Report the weak-form side, -(i0 + i1 + i2) <= 0.
    const double value = -(i0 + i1 + i2);
    out.values[j] = value;
    out.min_value = std::min(out.min_value, value);
    out.max_value = std::max(out.max_value, value);
  }
  return out;
}

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const std::size_t j = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + w * (ys[j] - ys[j - 1]);
}

}  // namespace

SelfSimilarity self_similarity_error(const Level& first, const Level& second) {
  if (!(first.t > 0.0) || !(second.t > 0.0)) {
    throw std::invalid_argument("self_similarity_error: snapshot times must be positive");
  }
  if (first.size() < 2 || second.size() < 2) {
    throw std::invalid_argument("self_similarity_error: snapshots need at least two nodes");
  }
  const Profile pa = profile(first);
  const Profile pb = profile(second);
  std::vector<double> za(pa.x.size());
  std::vector<double> zb(pb.x.size());
  for (std::size_t i = 0; i < za.size(); ++i) za[i] = pa.x[i] / pa.t;
  for (std::size_t i = 0; i < zb.size(); ++i) zb[i] = pb.x[i] / pb.t;

  SelfSimilarity out;
  out.zeta_lo = std::max(za.front(), zb.front());
  out.zeta_hi = std::min(za.back(), zb.back());
  if (!(out.zeta_hi > out.zeta_lo)) throw std::invalid_argument("self_similarity_error: no zeta overlap");

  // Trapezoid rule on a uniform zeta grid finer than either snapshot.
  const std::size_t samples = 2 * std::max(za.size(), zb.size()) + 1;
  const double h = (out.zeta_hi - out.zeta_lo) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = i + 1 == samples ? out.zeta_hi : out.zeta_lo + h * static_cast<double>(i);
    const double w = (i == 0 || i + 1 == samples) ? 0.5 * h : h;
    out.p_error += w * std::abs(interpolate(za, pa.p, z) - interpolate(zb, pb.p, z));
    out.v_error += w * std::abs(interpolate(za, pa.v, z) - interpolate(zb, pb.v, z));
  }
  return out;
}

EnergyBalanceTracker::EnergyBalanceTracker(const GridSpec& grid, double radius)
    : grid_(grid), radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("energy_balance: radius must be positive");
}

void EnergyBalanceTracker::observe(const Level& level) {
  if (level.size() < 2 || !(radius_ < level.x.back()) || !(radius_ > level.x.front())) {
    throw std::out_of_range("energy_balance: radius " + std::to_string(radius_) +
                            " lies outside the level at t=" + std::to_string(level.t));
  }
  // Trapezoid rule on [0, R]; a is held constant between the axis and the
  // first node, where the x^2 weight makes the contribution negligible.
  double integral = 0.0;
  double x_prev = 0.0;
  double f_prev = 0.0;
  std::size_t j = 0;
  for (; j < level.size() && level.x[j] < radius_; ++j) {
    const double f = level.states[j].a * level.x[j] * level.x[j];
    if (j == 0 && level.x[0] > 0.0) {
      // integral of a_0 x^2 over [0, x_0]
      integral += level.states[0].a * level.x[0] * level.x[0] * level.x[0] / 3.0;
    } else if (j > 0) {
      integral += 0.5 * (f + f_prev) * (level.x[j] - x_prev);
    }
    x_prev = level.x[j];
    f_prev = f;
  }
  const double w = (radius_ - level.x[j - 1]) / (level.x[j] - level.x[j - 1]);
  const ConservedState& lo = level.states[j - 1];
  const ConservedState& hi = level.states[j];
  const double a_r = lo.a + w * (hi.a - lo.a);
  const double b_r = lo.b + w * (hi.b - lo.b);
  integral += 0.5 * (a_r * radius_ * radius_ + f_prev) * (radius_ - x_prev);

  times_.push_back(level.t);
  energy_.push_back(integral);
  boundary_flux_.push_back(radius_ * radius_ * b_r);
}

EnergyBalance EnergyBalanceTracker::result() const {
  EnergyBalance out;
  out.times = times_;
  out.energy = energy_;
  double scale = 0.0;
  for (double e : energy_) scale = std::max(scale, std::abs(e));
  for (std::size_t n = 1; n + 1 < energy_.size(); ++n) {
    const double dt = times_[n + 1] - times_[n - 1];
    const double r = (energy_[n + 1] - energy_[n - 1]) / dt + boundary_flux_[n];
    out.residuals.push_back(r);
    if (scale > 0.0) out.max_normalized = std::max(out.max_normalized, std::abs(r) / scale);
  }
  return out;
}

EnergyBalance energy_balance(std::span<const Level> levels, const GridSpec& grid, double radius) {
  EnergyBalanceTracker tracker(grid, radius);
  for (const auto& level : levels) tracker.observe(level);
  return tracker.result();
}

InwardShockTracker::InwardShockTracker(const GridSpec& grid, double t_begin, double t_end,
                                       Window window, JumpMeasure measure)
    : grid_(grid), t_begin_(t_begin), t_end_(t_end), window_(window), measure_(measure) {}

void InwardShockTracker::observe(const Level& level) {
  if (arrived_ || level.n % 2 == 0 || level.t < t_begin_ || level.t > t_end_) return;
  double position = 0.0;
  try {
    position = detect_shock(level, window_, measure_);
  } catch (const NoShockError&) {
    return;
  }
  track_.times.push_back(level.t);
  track_.positions.push_back(position);
  // The shock only moves inward; keep the search window just above it.
  window_.hi = std::min(window_.hi, position + 0.1);
  if (position < 2.0 * grid_.dx) {
    arrived_ = true;
    threshold_time_ = level.t;
  }
}

ArrivalEstimate InwardShockTracker::arrival(std::size_t fit_points) const {
  if (!arrived_) throw NoShockError("inward shock did not reach the axis inside the track window");
  const std::size_t n = track_.times.size();
  const std::size_t k = std::min(fit_points, n);
  ShockTrack tail;
  tail.times.assign(track_.times.end() - k, track_.times.end());
  tail.positions.assign(track_.positions.end() - k, track_.positions.end());
  shock_speed(tail);
  ArrivalEstimate est;
  est.threshold_time = threshold_time_;
  est.extrapolated_time = -tail.intercept / tail.fitted_speed;
  est.points_used = k;
  return est;
}

}  // namespace ultrarad::diagnostics
