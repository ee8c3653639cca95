#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ultrarad/diagnostics.hpp"
#include "ultrarad/linear.hpp"

using namespace ultrarad;
using namespace ultrarad::diagnostics;
using oracle::kSqrt3;

namespace {

Level sampled(double t, double dx, int nodes, const std::function<ConservedState(double)>& f) {
  Level level;
  level.n = 1;
  level.t = t;
  for (int j = 0; j < nodes; ++j) {
    const double x = (j + 0.5) * dx;
    level.x.push_back(x);
    level.states.push_back(f(x));
  }
  return level;
}

Level imploding_level(double t, double dx) {
  return sampled(t, dx, static_cast<int>(2.0 / dx), [t](double x) {
    const auto [a, b] = oracle::imploding(t, x);
    return ConservedState{a, b};
  });
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("shock detection on a step") {
  const Level level = sampled(1.0, 0.01, 100, [](double x) {
    return x < 0.4 ? ConservedState{3.0, 0.0} : ConservedState{0.3, 0.0};
  });
  CHECK(detect_shock(level) == doctest::Approx(0.4));
  CHECK(detect_shock(level, Window{0.2, 0.6}) == doctest::Approx(0.4));
  CHECK_THROWS_AS(detect_shock(level, Window{0.6, 0.6}), NoShockError);
  CHECK_THROWS_AS(detect_shock(level, Window{0.5, 0.52}), NoShockError);

  const Level flat = sampled(1.0, 0.01, 100, [](double) { return ConservedState{3.0, 0.0}; });
  CHECK_THROWS_AS(detect_shock(flat), NoShockError);
}

TEST_CASE("tracking the linear imploding shock") {
  const double dx = 1e-3;
  ShockTrack track;
  for (double t = 0.2; t <= 1.2001; t += 0.1) {
    const double pos = detect_shock(imploding_level(t, dx), Window{0.0, 0.9});
    CHECK(std::abs(pos - (1.0 - t / kSqrt3)) <= 2.0 * dx);
    track.times.push_back(t);
    track.positions.push_back(pos);
  }
  CHECK(shock_speed(track) == doctest::Approx(-1.0 / kSqrt3).epsilon(1e-3));
  CHECK(track.fit_residual < dx);

  ShockTrack still{{0.1, 0.2, 0.3, 0.4, 0.5}, {0.3, 0.3, 0.3, 0.3, 0.3}};
  CHECK(shock_speed(still) == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
  ShockTrack short_track{{0.1, 0.2}, {0.3, 0.3}};
  CHECK_THROWS(shock_speed(short_track));
}

TEST_CASE("admissibility is antisymmetric") {
  const ConservedState inner = to_conserved({25.0, 0.0});
  const ConservedState outer = to_conserved({1.0, -1.0});
  CHECK(shock_admissible(inner, outer));
  CHECK_FALSE(shock_admissible(outer, inner));
  CHECK_FALSE(shock_admissible(inner, inner));
}

TEST_CASE("entropy production vanishes for a constant state") {
  const GridSpec g = build_grid(1.0, 1.0, 50);
  Level prev = initial_level(rest_state_data(3.0), g);
  for (int n = 1; n < 6; ++n) {
    const Level next = step(prev, g);
    const EntropyProduction e = entropy_production(prev, next, g);
    CHECK(e.values.size() == next.size());
    CHECK(std::abs(e.min_value) <= 1e-12);
    CHECK(std::abs(e.max_value) <= 1e-12);
    prev = next;
  }
  const Level a = initial_level(rest_state_data(3.0), g);
  CHECK_THROWS(entropy_production(a, a, g));
}

TEST_CASE("self-similarity error") {
  const auto profile_at = [](double t, double dx) {
    return sampled(t, dx, 200, [t](double x) {
      const double zeta = x / t;
      return ConservedState{3.0 * (1.0 + zeta), 0.0};
    });
  };
  const Level early = profile_at(0.5, 0.005);
  const Level late = profile_at(1.0, 0.01);
  const SelfSimilarity s = self_similarity_error(early, late);
  CHECK(s.total() <= 1e-12);
  const SelfSimilarity same = self_similarity_error(late, late);
  CHECK(same.total() == 0.0);
  const SelfSimilarity back = self_similarity_error(late, early);
  CHECK(back.total() == doctest::Approx(s.total()).epsilon(1e-12).scale(1e-12));

  const Level skewed = sampled(1.0, 0.01, 200, [](double x) { return ConservedState{3.0 * (1.0 + x * x), 0.0}; });
  CHECK(self_similarity_error(early, skewed).p_error > 0.01);
}

TEST_CASE("energy balance of a rest state") {
  const GridSpec g = build_grid(1.0, 1.0, 100);
  EnergyBalanceTracker tracker(g, 0.9);
  run(rest_state_data(3.0), g, {}, [&](const Level& level) { tracker.observe(level); });
  const EnergyBalance e = tracker.result();
  CHECK(e.residuals.size() == static_cast<std::size_t>(g.level_count() - 2));
  CHECK(e.max_normalized <= 1e-12);
  CHECK(e.energy.front() == doctest::Approx(0.9 * 0.9 * 0.9).epsilon(1e-3));

  EnergyBalanceTracker outside(g, 5.0);
  CHECK_THROWS_AS(outside.observe(initial_level(rest_state_data(3.0), g)), std::out_of_range);
}

}
