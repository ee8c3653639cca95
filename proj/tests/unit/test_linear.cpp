#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ultrarad/linear.hpp"

using namespace ultrarad;
using namespace ultrarad::linear;
using oracle::kSqrt3;

namespace {

// Affine near the axis and on [0.5, 1.5]; kinks only at 0.5 and 1.5.
PiecewiseData smooth_data() {
  const PiecewiseLinear a0({0.0, 0.5, 1.5}, {{1.5, 0.0}, {1.3, 0.4}, {1.9, 0.0}});
  const PiecewiseLinear b0({0.0, 0.5, 1.5}, {{0.0, 0.2}, {0.075, 0.05}, {0.15, 0.0}});
  return PiecewiseData::conserved(a0, b0);
}

}  // namespace

TEST_SUITE("linear") {

TEST_CASE("primitives") {
  const Primitives one(rest_state_data(1.0));
  for (double x : {0.0, 0.3, 1.0, 2.5}) {
    CHECK(one.A(x) == doctest::Approx(x * x / 2.0).epsilon(1e-15));
    CHECK(one.B(x) == 0.0);
  }
  const Primitives step(imploding_shock_data());
  CHECK(step.A(0.5) == doctest::Approx(0.125));
  CHECK(step.A(2.0) == doctest::Approx(3.5));
  CHECK(step.A(-2.0) == step.A(2.0));
  CHECK(step.A(0.0) == 0.0);

  // A' = x a0 and B' = b0 away from breakpoints.
  const Primitives smooth(smooth_data());
  const double h = 1e-6;
  for (double x : {0.2, 0.8, 1.2, 2.0}) {
    CHECK((smooth.A(x + h) - smooth.A(x - h)) / (2 * h) == doctest::Approx(x * smooth.a0(x)).epsilon(1e-8));
    CHECK((smooth.B(x + h) - smooth.B(x - h)) / (2 * h) == doctest::Approx(smooth.b0(x)).epsilon(1e-8));
    CHECK(smooth.B(-x) == smooth.B(x));
    CHECK(smooth.b0(-x) == -smooth.b0(x));
  }
}

TEST_CASE("initial condition is reproduced at t = 0") {
  const PiecewiseData data = smooth_data();
  for (double x : {0.1, 0.3, 0.9, 1.1, 2.0}) {
    const ConservedState s = eval_linear(0.0, x, data);
    CHECK(s.a == doctest::Approx(data.first(x)).epsilon(1e-13));
    CHECK(s.b == doctest::Approx(data.second(x)).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("constant data is stationary") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double A = 0.01 + 100.0 * unit(rng);
    const ConservedState s = eval_linear(5.0 * unit(rng), 1e-3 + 4.0 * unit(rng), rest_state_data(A));
    REQUIRE(std::abs(s.a - A) <= 1e-12 * A);
    REQUIRE(std::abs(s.b) <= 1e-12 * A);
  }
}

TEST_CASE("radius guard") {
  CHECK_THROWS_AS(eval_linear(0.5, 0.0, rest_state_data()), DomainError);
  CHECK_THROWS_AS(eval_linear(0.5, 1e-11, rest_state_data()), DomainError);
  CHECK_NOTHROW(eval_linear(0.5, 1e-10, rest_state_data()));
  CHECK_THROWS_AS(eval_linear(-0.1, 1.0, rest_state_data()), DomainError);
}

TEST_CASE("imploding shock regions") {
  auto r = imploding_shock_exact(0.1, 0.1);
  CHECK(r.region == Region::kOmega1);
  CHECK(*r.state == ConservedState{1.0, 0.0});

  r = imploding_shock_exact(kSqrt3, 1.0);
  CHECK(r.region == Region::kOmega2);
  CHECK(r.state->a == doctest::Approx(2.0));
  CHECK(r.state->b == doctest::Approx(-1.0 / (4.0 * kSqrt3)));

  r = imploding_shock_exact(2.0 * kSqrt3, 0.5);
  CHECK(r.region == Region::kOmega4);
  CHECK(*r.state == ConservedState{2.0, 0.0});

  r = imploding_shock_exact(kSqrt3 / 2.0, 0.5);
  CHECK(r.region == Region::kShockLine);
  CHECK_FALSE(r.state.has_value());
}

TEST_CASE("closed-form imploding shock agrees with the general formula") {
  const PiecewiseData data = imploding_shock_data();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  while (checked < 5000) {
    const double t = 4.0 * unit(rng);
    const double x = 0.01 + 3.0 * unit(rng);
    const double s = t / kSqrt3;
    if (std::abs(x - (1 - s)) < 1e-6 || std::abs(x - (s - 1)) < 1e-6 || std::abs(x - (1 + s)) < 1e-6) continue;
    const auto [a, b] = oracle::imploding(t, x);
    const ConservedState general = eval_linear(t, x, data);
    const ImplodingSample exact = imploding_shock_exact(t, x);
    REQUIRE(exact.state.has_value());
    const double scale = std::fmax(1.0, std::fmax(std::abs(a), std::abs(b)));
    REQUIRE(std::abs(general.a - a) <= 1e-12 * scale);
    REQUIRE(std::abs(general.b - b) <= 1e-12 * scale);
    REQUIRE(std::abs(exact.state->a - a) <= 1e-12 * scale);
    REQUIRE(std::abs(exact.state->b - b) <= 1e-12 * scale);
    ++checked;
  }
}

TEST_CASE("Rankine-Hugoniot speeds on the three shock lines") {
  CHECK(rh_speed_linear({2.0, 0.0}, {2.0 + 1.0, 0.0}) == 0.0);
  CHECK_THROWS(rh_speed_linear({1.0, 0.0}, {1.0, 0.5}));
  for (double t : {0.2, 0.8, 1.5}) {
    const ShockSides in = imploding_shock_sides(t, ShockLine::kInward);
    CHECK(in.position == doctest::Approx(1.0 - t / kSqrt3));
    CHECK(std::abs(rh_speed_linear(in.lower, in.upper) + 1.0 / kSqrt3) <= 1e-12);
    // the side limits agree with the oracle just off the line
    const auto lo = oracle::imploding(t, in.position - 1e-9);
    CHECK(in.lower.a == doctest::Approx(lo.first).epsilon(1e-6));
  }
  for (double t : {0.5, 2.0, 3.0}) {
    const ShockSides out = imploding_shock_sides(t, ShockLine::kOutward);
    CHECK(std::abs(rh_speed_linear(out.lower, out.upper) - 1.0 / kSqrt3) <= 1e-12);
  }
  for (double t : {2.0, 2.5, 4.0}) {
    const ShockSides refl = imploding_shock_sides(t, ShockLine::kReflected);
    CHECK(std::abs(rh_speed_linear(refl.lower, refl.upper) - 1.0 / kSqrt3) <= 1e-12);
  }
  // (t = sqrt 3, x = 2): Omega_3/Omega_4 side against Omega_2 side
  const auto inner = oracle::imploding(kSqrt3, 2.0 - 1e-12);
  CHECK(std::abs(rh_speed_linear({inner.first, inner.second}, {2.0, 0.0}) - 1.0 / kSqrt3) <= 1e-9);
}

TEST_CASE("finite-difference residual decays at second order") {
  const LinearSolution sol(smooth_data());
  const auto f = [&](double t, double x) {
    const ConservedState s = sol(t, x);
    return std::pair{s.a, s.b};
  };
  for (double t : {0.1, 0.25}) {
    for (double x : {0.95, 1.05}) {
      const double r1 = oracle::pde_residual(f, t, x, 1e-2);
      const double r2 = oracle::pde_residual(f, t, x, 5e-3);
      const double r3 = oracle::pde_residual(f, t, x, 2.5e-3);
      CHECK(std::log2(r1 / r2) > 1.8);
      CHECK(std::log2(r2 / r3) > 1.8);
    }
  }
}

TEST_CASE("boundary limit") {
  const PiecewiseData smooth = PiecewiseData::conserved(PiecewiseLinear::constant(2.0),
                                                        PiecewiseLinear({0.0, 0.7}, {{0.0, 0.1}, {0.07, 0.0}}));
  CHECK(std::abs(boundary_limit(1.0, smooth)) <= 1e-6);
  CHECK(std::abs(boundary_limit(1.0, rest_state_data(2.0))) <= 1e-12);
  CHECK_THROWS_AS(boundary_limit(2.0, imploding_shock_data()), DomainError);
  // x b stays bounded as x -> 0
  const ConservedState near = eval_linear(1.0, 1e-4, smooth);
  CHECK(std::abs(1e-4 * near.b) < 1e-3);
}

}
