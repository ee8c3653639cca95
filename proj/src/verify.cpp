#include "ultrarad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "ultrarad/linear.hpp"
#include "ultrarad/piecewise.hpp"
#include "ultrarad/scheme.hpp"
#include "ultrarad/state.hpp"

namespace ultrarad::verify {

namespace {

constexpr std::size_t kLemmaTrials = 100000;
constexpr std::size_t kOracleTrials = 10000;
const double kSqrt3 = std::sqrt(3.0);

// Random admissible state; a third of the draws sit close to |b| = a. The
// flux bounds have margins quadratic in the distance to the boundary, so that
// distance is kept above 1e-6 where the margin still exceeds rounding.
struct StateSampler {
  std::mt19937_64& rng;
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  double log_uniform(double lo, double hi) {
    return std::exp(std::log(lo) + unit(rng) * (std::log(hi) - std::log(lo)));
  }

  ConservedState state() {
    const double a = log_uniform(1e-3, 1e3);
    double r;
    if (unit(rng) < 1.0 / 3.0) {
      r = (1.0 - log_uniform(1e-6, 1e-1)) * (unit(rng) < 0.5 ? -1.0 : 1.0);
    } else {
      r = 2.0 * unit(rng) - 1.0;
    }
    return {a, r * a};
  }

  double lambda() { return unit(rng) < 0.2 ? 1.0 : 1.0 + 3.0 * unit(rng); }
};

PropertyResult margin_property(std::string name) {
  return {std::move(name), 0, std::numeric_limits<double>::infinity(), true};
}

void record_margin(PropertyResult& r, double margin) {
  ++r.trials;
  r.worst_margin = std::min(r.worst_margin, margin);
  if (!(margin > 0.0)) r.passed = false;
}

void record_error(PropertyResult& r, double error, double tol) {
  ++r.trials;
  r.worst_margin = std::max(r.worst_margin, error);
  if (!(error <= tol)) r.passed = false;
}

PropertyResult error_property(std::string name) { return {std::move(name), 0, 0.0, true}; }

}  // namespace

double bisect_momentum(double a, double xi, double eta) {
  const auto g = [&](double b) { return b - xi - eta * std::sqrt(std::max(0.0, 4.0 * a * a - 3.0 * b * b)); };
  double lo = -a;
  double hi = a;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<PropertyResult> lemma_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StateSampler sample{rng};
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  PropertyResult minus_bounds = margin_property("lemma_flux_bounds_minus");
  PropertyResult plus_bounds = margin_property("lemma_flux_bounds_plus");
  for (std::size_t i = 0; i < kLemmaTrials; ++i) {
    const ConservedState s = sample.state();
    const double lambda = sample.lambda();
    const double c = flux_c(s);
    const double outer_m = s.a + s.b / lambda;
    const double mid_m = s.b + c / lambda;
    record_margin(minus_bounds, std::min(mid_m + outer_m, outer_m - mid_m) / s.a);
    const double outer_p = s.a - s.b / lambda;
    const double mid_p = s.b - c / lambda;
    record_margin(plus_bounds, std::min(mid_p + outer_p, outer_p - mid_p) / s.a);
  }

  PropertyResult radicand = margin_property("lemma_radicand_positive");
  PropertyResult bound = margin_property("lemma_momentum_bound");
  for (std::size_t i = 0; i < kLemmaTrials; ++i) {
    const double a = sample.log_uniform(1e-3, 1e3);
    double eta = unit(rng) / 3.0;
    if (eta == 0.0 || unit(rng) < 0.1) eta = 1.0 / 3.0;
    const double lo = -a * (1.0 + eta);
    const double hi = a * (1.0 - eta);
    const double xi = lo + (hi - lo) * (0.001 + 0.998 * unit(rng));
    const double scale = 1.0 + 3.0 * eta * eta;
    const double rad = 4.0 * a * a * scale - 3.0 * xi * xi;
    record_margin(radicand, rad / (a * a));
    const double b = (xi + eta * std::sqrt(rad)) / scale;
    record_margin(bound, (a - std::abs(b)) / a);
  }

  PropertyResult oracle = error_property("closed_form_vs_bisection");
  PropertyResult implicit = error_property("implicit_equation_residual");
  PropertyResult admissible = margin_property("update_admissible");
  for (std::size_t i = 0; i < kOracleTrials; ++i) {
    const ConservedState m = sample.state();
    const ConservedState p = sample.state();
    const double dx = sample.log_uniform(1e-4, 1e-1);
    const double x_bar = unit(rng) < 0.1 ? 0.0 : dx * std::floor(unit(rng) * 2000.0) / 2.0;
    const double lambda = sample.lambda();
    const EulerTerms terms = euler_update_terms(m, p, x_bar, dx, lambda);
    const double a = terms.result.a;
    const double b = terms.result.b;
    const double reference = bisect_momentum(a, terms.xi, terms.eta);
    record_error(oracle, std::abs(b - reference) / a, 1e-12);
    const double residual = b - terms.xi - terms.eta * std::sqrt(std::max(0.0, 4.0 * a * a - 3.0 * b * b));
    record_error(implicit, std::abs(residual) / a, 1e-12);
    record_margin(admissible, (a - std::abs(b)) / a);
  }
  return {minus_bounds, plus_bounds, radicand, bound, oracle, implicit, admissible};
}

std::vector<PropertyResult> stationary_suite() {
  std::vector<PropertyResult> out;

  // Every level of a rest-state run must reproduce the state bit for bit.
  for (double a0 : {3.0, 0.125, 1e3}) {
    char name[64];
    std::snprintf(name, sizeof name, "rest_state_exact_a%g", a0);
    PropertyResult r = error_property(name);
    const GridSpec grid = build_grid(1.0, 1.0, 200);
    run(rest_state_data(a0), grid, {}, [&](const Level& level) {
      for (const auto& s : level.states) {
        const double drift = std::abs(s.a - a0) + std::abs(s.b);
        record_error(r, drift, 0.0);
      }
    });
    out.push_back(r);
  }

  // b at the axis is zero on every even level, for flows moving both ways.
  for (const auto& [label, data] : {std::pair{"outflow", outflow_data()}, std::pair{"inflow", inflow_data()}}) {
    PropertyResult r = error_property(std::string("boundary_momentum_zero_") + label);
    const GridSpec grid = build_grid(1.0, 1.0, 200);
    run(data, grid, {}, [&](const Level& level) {
      if (level.n % 2 == 0) record_error(r, std::abs(level.states.front().b), 0.0);
    });
    out.push_back(r);
  }
  return out;
}

namespace {

PiecewiseData smooth_linear_data() {
  // C^2 (affine) on [0.8, 1.2] and around the axis.
  const PiecewiseLinear a0({0.0, 0.5, 1.5}, {{1.5, 0.0}, {1.5 - 0.4 * 0.5, 0.4}, {1.9, 0.0}});
  const PiecewiseLinear b0({0.0, 0.5, 1.5}, {{0.0, 0.2}, {0.1 - 0.05 * 0.5, 0.05}, {0.15, 0.0}});
  return PiecewiseData::conserved(a0, b0);
}

// |residual| of both equations from central differences of width h.
double pde_residual(const linear::LinearSolution& sol, double t, double x, double h) {
  const auto xa = [&](double tt, double xx) { return xx * xx * sol(tt, xx).a; };
  const auto xb = [&](double tt, double xx) { return xx * xx * sol(tt, xx).b; };
  const double mass = (xa(t + h, x) - xa(t - h, x)) / (2.0 * h) + (xb(t, x + h) - xb(t, x - h)) / (2.0 * h);
  const double momentum = (xb(t + h, x) - xb(t - h, x)) / (2.0 * h) +
                          (xa(t, x + h) - xa(t, x - h)) / (6.0 * h) - 2.0 * x / 3.0 * sol(t, x).a;
  return std::abs(mass) + std::abs(momentum);
}

}  // namespace

double linear_regime_error(int N) {
  constexpr double eps = 1e-3;
  constexpr double base = 2.0;
  const double xs[] = {0.0, 0.3, 0.5, 0.7};
  const double bump[] = {base, base, base * (1.0 + eps), base};
  const double zero[] = {0.0, 0.0, 0.0, 0.0};
  const PiecewiseData data = PiecewiseData::conserved(PiecewiseLinear::interpolate(xs, bump),
                                                      PiecewiseLinear::interpolate(xs, zero));
  const GridSpec grid = build_grid(0.25, 1.0, N);
  const SimulationResult result = run(data, grid);
  const linear::LinearSolution sol(data);
  const Level& level = result.final_level;
  double error = 0.0;
  for (std::size_t j = 0; j < level.size(); ++j) {
    const ConservedState exact = sol(level.t, level.x[j]);
    error += (std::abs(level.states[j].a - exact.a) + std::abs(level.states[j].b - exact.b)) * grid.dx;
  }
  return error / (eps * base);
}

std::vector<PropertyResult> linear_suite() {
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  PropertyResult constant = error_property("constant_data_stationary");
  for (int i = 0; i < 1000; ++i) {
    const double a0 = 0.1 + 10.0 * unit(rng);
    const PiecewiseData data = rest_state_data(a0);
    const ConservedState s = linear::eval_linear(4.0 * unit(rng), 0.01 + 3.0 * unit(rng), data);
    record_error(constant, (std::abs(s.a - a0) + std::abs(s.b)) / a0, 1e-12);
  }
  out.push_back(constant);

  PropertyResult imploding = error_property("imploding_shock_closed_form");
  const linear::LinearSolution shock(imploding_shock_data());
  while (imploding.trials < 10000) {
    const double t = 4.0 * unit(rng);
    const double x = 0.02 + 3.0 * unit(rng);
    const double s = t / kSqrt3;
    if (std::min({std::abs(x - (1.0 - s)), std::abs(x - (s - 1.0)), std::abs(x - (1.0 + s))}) < 1e-6) continue;
    const linear::ImplodingSample exact = linear::imploding_shock_exact(t, x);
    if (!exact.state) continue;
    const ConservedState v = shock(t, x);
    const double scale = std::max({1.0, std::abs(exact.state->a), std::abs(exact.state->b)});
    record_error(imploding, (std::abs(v.a - exact.state->a) + std::abs(v.b - exact.state->b)) / scale, 1e-12);
  }
  out.push_back(imploding);

  PropertyResult rh = error_property("rankine_hugoniot_speeds");
  for (double t : {0.3, 0.9, 1.5, 2.0, 2.6, 3.4}) {
    const std::pair<linear::ShockLine, double> lines[] = {
        {linear::ShockLine::kInward, -1.0 / kSqrt3},
        {linear::ShockLine::kReflected, 1.0 / kSqrt3},
        {linear::ShockLine::kOutward, 1.0 / kSqrt3}};
    for (const auto& [line, expected] : lines) {
      if (line == linear::ShockLine::kInward && t >= kSqrt3) continue;
      if (line == linear::ShockLine::kReflected && t <= kSqrt3) continue;
      const linear::ShockSides sides = linear::imploding_shock_sides(t, line);
      record_error(rh, std::abs(linear::rh_speed_linear(sides.lower, sides.upper) - expected), 1e-12);
    }
  }
  out.push_back(rh);

  // Second-order decay of the finite-difference residual.
  PropertyResult order = margin_property("pde_residual_second_order");
  const linear::LinearSolution smooth(smooth_linear_data());
  for (double t : {0.1, 0.2, 0.3}) {
    for (double x : {0.95, 1.0, 1.05}) {
      const double r1 = pde_residual(smooth, t, x, 1e-2);
      const double r2 = pde_residual(smooth, t, x, 5e-3);
      const double r3 = pde_residual(smooth, t, x, 2.5e-3);
      const double p1 = std::log2(r1 / r2);
      const double p2 = std::log2(r2 / r3);
      // margin: how far the observed orders exceed 1.8
      record_margin(order, std::min(p1, p2) - 1.8);
    }
  }
  out.push_back(order);

  PropertyResult limit = error_property("boundary_limit_zero");
  {
    const PiecewiseData data = PiecewiseData::conserved(
        PiecewiseLinear::constant(2.0), PiecewiseLinear({0.0, 0.7}, {{0.0, 0.1}, {0.07, 0.0}}));
    for (double t : {0.25, 0.5, 1.0}) record_error(limit, std::abs(linear::boundary_limit(t, data)), 1e-6);
  }
  out.push_back(limit);

  PropertyResult convergence = margin_property("linear_regime_convergence");
  double previous = std::numeric_limits<double>::infinity();
  for (int N : {100, 200, 400}) {
    const double e = linear_regime_error(N);
    record_margin(convergence, (previous - e) / e);
    previous = e;
  }
  out.push_back(convergence);
  return out;
}

std::vector<PropertyResult> run_suite(std::string_view name) {
  if (name == "lemmas") return lemma_suite();
  if (name == "stationary") return stationary_suite();
  if (name == "linear") return linear_suite();
  if (name == "all") {
    std::vector<PropertyResult> out = lemma_suite();
    for (auto& r : stationary_suite()) out.push_back(r);
    for (auto& r : linear_suite()) out.push_back(r);
    return out;
  }
  throw std::invalid_argument("unknown suite '" + std::string(name) + "' (lemmas, stationary, linear, all)");
}

void write_report(const std::vector<PropertyResult>& results, std::ostream& out) {
  for (const auto& r : results) {
    char margin[32];
    std::snprintf(margin, sizeof margin, "%.6e", r.worst_margin);
    out << r.name << ' ' << r.trials << ' ' << margin << ' ' << (r.passed ? "PASS" : "FAIL") << '\n';
  }
}

bool all_passed(const std::vector<PropertyResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

}  // namespace ultrarad::verify
