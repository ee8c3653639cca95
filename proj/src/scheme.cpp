#include "ultrarad/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ultrarad {

GridSpec build_grid(double t_star, double x_star, int N) {
  if (!(t_star > 0.0) || !(x_star > 0.0)) throw GridError("t_star and x_star must be positive");
  if (N < 1) throw GridError("N must be a positive integer");
  if (static_cast<double>(N) * x_star < t_star) {
    throw GridError("CFL admissibility violated: N * x_star = " +
                    std::to_string(N * x_star) + " < t_star = " + std::to_string(t_star));
  }
  GridSpec g;
  g.t_star = t_star;
  g.x_star = x_star;
  g.N = N;
  g.M = static_cast<int>(std::floor(x_star * N / t_star));
  if (g.M < 1) throw GridError("M = floor(x_star N / t_star) must be at least 1");
  g.dt = t_star / (2.0 * N);
  g.dx = x_star / g.M;
  g.lambda = g.dx / (2.0 * g.dt);
  // floor() of a product that rounded up can leave lambda one ulp below 1.
  if (g.lambda < 1.0 && g.lambda > 1.0 - 1e-12) g.lambda = 1.0;
  if (g.lambda < 1.0) throw GridError("lambda < 1");
  return g;
}

namespace {

void require_inputs(const ConservedState& m, const ConservedState& p, double x_bar, double dx,
                    double lambda) {
  if (!is_admissible(m) || !is_admissible(p)) {
    throw DomainError("euler_update: input states must satisfy |b| < a");
  }
  if (!(x_bar >= 0.0)) throw DomainError("euler_update: x_bar must be >= 0");
  if (!(dx > 0.0)) throw DomainError("euler_update: dx must be > 0");
  if (!(lambda >= 1.0)) throw DomainError("euler_update: lambda must be >= 1");
}

}  // namespace

EulerTerms euler_update_terms(const ConservedState& minus, const ConservedState& plus,
                              double x_bar, double dx, double lambda) {
  require_inputs(minus, plus, x_bar, dx, lambda);
  return detail::euler_terms(minus, plus, x_bar, dx, lambda);
}

ConservedState euler_update(const ConservedState& minus, const ConservedState& plus, double x_bar,
                            double dx, double lambda) {
  return euler_update_terms(minus, plus, x_bar, dx, lambda).result;
}

Level initial_level(const PiecewiseData& data, const GridSpec& grid) {
  data.validate();
  Level level;
  level.n = 1;
  level.t = 0.0;
  const int count = grid.nodes_at(1);
  level.x.resize(count);
  level.states.resize(count);
  for (int j = 0; j < count; ++j) {
    level.x[j] = grid.node_x(1, j);
    level.states[j] = data.sample_left(level.x[j]);
    if (!is_admissible(level.states[j])) {
      throw DomainError("initial data inadmissible at x=" + std::to_string(level.x[j]));
    }
  }
  return level;
}

namespace {

void step_into(const Level& prev, Level& next, const GridSpec& grid, int threads) {
  const int n = prev.n;
  const int count = grid.nodes_at(n + 1);
  if (static_cast<int>(prev.size()) != grid.nodes_at(n)) {
    throw std::invalid_argument("step: level size does not match the grid");
  }
  next.n = n + 1;
  next.t = grid.time_at(n + 1);
  next.x.resize(count);
  next.states.resize(count);

  const auto& s = prev.states;
  const double dx = grid.dx;
  const double lambda = grid.lambda;
  const bool odd = n % 2 == 1;
  [[maybe_unused]] const int nthreads = std::max(threads, 1);

#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
  for (int j = 0; j < count; ++j) {
    const double x_bar = grid.node_x(n + 1, j);
    next.x[j] = x_bar;
    if (odd) {
      // Grid points: node 0 sits on the axis and sees the reflected state.
      const ConservedState& plus = s[j];
      const ConservedState minus = j == 0 ? ConservedState{plus.a, -plus.b} : s[j - 1];
      next.states[j] = detail::euler_terms(minus, plus, x_bar, dx, lambda).result;
    } else {
      next.states[j] = detail::euler_terms(s[j], s[j + 1], x_bar, dx, lambda).result;
    }
  }

  for (int j = 0; j < count; ++j) {
    if (!is_admissible(next.states[j])) {
      throw DomainError("scheme produced an inadmissible state at level " +
                        std::to_string(next.n) + ", x=" + std::to_string(next.x[j]));
    }
  }
}

}  // namespace

Level step(const Level& level, const GridSpec& grid, int threads) {
  if (level.n < 1 || level.n >= grid.level_count()) {
    throw std::invalid_argument("step: level index out of range");
  }
  for (const auto& s : level.states) {
    if (!is_admissible(s)) throw DomainError("step: input level holds an inadmissible state");
  }
  Level next;
  step_into(level, next, grid, threads);
  return next;
}

LevelStats level_stats(const Level& level) {
  LevelStats st;
  st.n = level.n;
  st.t = level.t;
  st.min_margin = std::numeric_limits<double>::infinity();
  st.p_min = std::numeric_limits<double>::infinity();
  st.p_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : level.states) {
    if (!is_admissible(s)) {
      ++st.violations;
      continue;
    }
    st.min_margin = std::min(st.min_margin, (s.a - std::abs(s.b)) / s.a);
    const double p = detail::pressure_from(s.a, s.b, root_term(s.a, s.b));
    if (!(p > 0.0)) ++st.violations;
    st.p_min = std::min(st.p_min, p);
    st.p_max = std::max(st.p_max, p);
  }
  if (level.n % 2 == 0 && !level.states.empty()) st.boundary_b = level.states.front().b;
  return st;
}

int nearest_level(const GridSpec& grid, double t) {
  int best = 1;
  double best_gap = std::abs(grid.time_at(1) - t);
  for (int n = 2; n <= grid.level_count(); ++n) {
    const double gap = std::abs(grid.time_at(n) - t);
    if (gap < best_gap) {
      best = n;
      best_gap = gap;
    }
  }
  return best;
}

SimulationResult run(const PiecewiseData& data, const GridSpec& grid, const RunOptions& options,
                     const LevelObserver& observer) {
  if (options.history_decimation < 1) throw std::invalid_argument("history decimation must be >= 1");
  SimulationResult result;
  result.grid = grid;

  std::vector<int> wanted;
  wanted.reserve(options.snapshot_times.size());
  for (double t : options.snapshot_times) wanted.push_back(nearest_level(grid, t));
  result.snapshots.resize(options.snapshot_times.size());

  Level current = initial_level(data, grid);
  Level next;
  result.stats.reserve(grid.level_count());

  auto visit = [&](const Level& level) {
    result.stats.push_back(level_stats(level));
    for (std::size_t i = 0; i < wanted.size(); ++i) {
      if (wanted[i] == level.n) result.snapshots[i] = {options.snapshot_times[i], level};
    }
    if (options.keep_history && (level.n - 1) % options.history_decimation == 0 &&
        level.n - 1 < 2 * grid.N) {
      result.history.push_back(level);
    }
    if (observer) observer(level);
  };

  visit(current);
  for (int n = 1; n < grid.level_count(); ++n) {
    step_into(current, next, grid, options.threads);
    std::swap(current, next);
    visit(current);
  }
  result.final_level = std::move(current);
  return result;
}

}  // namespace ultrarad
