#ifndef ULTRARAD_SCHEME_HPP
#define ULTRARAD_SCHEME_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ultrarad/piecewise.hpp"
#include "ultrarad/state.hpp"

namespace ultrarad {

/// Raised when N * x_star < t_star, which would make lambda < 1.
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Staggered space-time grid over the trapezoid
/// { 0 <= t <= t_star, 0 <= x <= x_star + lambda (t_star - t) }.
///
/// Levels are numbered n = 1 .. 2N+1 with t_n = (n-1) dt. Odd levels hold
/// cell midpoints (j - 1/2) dx, even levels hold grid points (j - 1) dx,
/// j = 1 .. M + N - floor((n-1)/2).
struct GridSpec {
  double t_star = 1.0;
  double x_star = 1.0;
  int N = 1;
  int M = 1;
  double dt = 0.5;
  double dx = 1.0;
  double lambda = 1.0;

  int level_count() const { return 2 * N + 1; }
  int nodes_at(int n) const { return M + N - (n - 1) / 2; }
  double time_at(int n) const { return (n - 1) * dt; }
  /// Position of node j (0-based) on level n.
  double node_x(int n, int j) const { return n % 2 == 1 ? (j + 0.5) * dx : j * dx; }
  /// Right edge of the trapezoid at time t.
  double extent_at(double t) const { return x_star + lambda * (t_star - t); }
};

GridSpec build_grid(double t_star, double x_star, int N);

/// One time level of the staggered grid.
struct Level {
  int n = 1;
  double t = 0.0;
  std::vector<double> x;
  std::vector<ConservedState> states;

  std::size_t size() const { return states.size(); }
};

/// Intermediate quantities of one triangle update, exposed for tests.
struct EulerTerms {
  double q = 0.0;
  double eta = 0.0;
  double xi = 0.0;
  ConservedState result;
};

namespace detail {

/// Triangle update without input validation. Inputs must satisfy |b| < a,
/// x_bar >= 0, dx > 0, lambda >= 1.
///
/// a' and b' are the balance-law solutions; b' is the positive-root solution
/// of b' = xi + eta sqrt(4a'^2 - 3b'^2). The algebra is arranged so that
/// xi + 2 eta a' is formed without cancellation: for a constant rest state
/// and at the reflected boundary it is exactly zero and the state is
/// reproduced bit for bit.
inline EulerTerms euler_terms(const ConservedState& m, const ConservedState& p, double x_bar,
                              double dx, double lambda) {
  const double area_moment = x_bar * x_bar + dx * dx / 3.0;
  const double q = 2.0 * x_bar * dx / area_moment;
  const double h = q / 4.0;
  const double eta = q / (6.0 * lambda);

  const double alpha_m = m.a + m.b / lambda;
  const double alpha_p = p.a - p.b / lambda;
  const double a_new = 0.5 * (alpha_m + alpha_p) + h * (alpha_p - alpha_m);

  const double d_m = detail::flux_excess(m.a, m.b, root_term(m.a, m.b));
  const double d_p = detail::flux_excess(p.a, p.b, root_term(p.a, p.b));

  // k = xi + 2 eta a'; the a/3 parts of c and of eta a' cancel analytically.
  const double k = 0.5 * (m.b + p.b + ((m.a - p.a) / 3.0 + d_m - d_p) / lambda) +
                   h * ((p.b - m.b) - (d_p + d_m) / lambda) +
                   eta * (0.5 * (m.b - p.b) / lambda + h * (alpha_p - alpha_m));
  const double xi = k - 2.0 * eta * a_new;

  const double scale = 1.0 + 3.0 * eta * eta;
  double radicand = 4.0 * a_new * a_new * scale - 3.0 * xi * xi;
  if (radicand < 0.0) radicand = 0.0;
  const double root = std::sqrt(radicand);

  double b_new;
  if (xi >= 0.0) {
    b_new = (xi + eta * root) / scale;
  } else {
    // (xi + eta root)/scale == (xi^2 - 4 eta^2 a'^2)/(xi - eta root)
    b_new = (xi - 2.0 * eta * a_new) * k / (xi - eta * root);
  }
  return {q, eta, xi, ConservedState{a_new, b_new}};
}

}  // namespace detail

/// Euler(a-, b-, a+, b+, x_bar, dx, lambda): state at the apex of the
/// balance triangle whose lower cords have midpoints x_bar -+ dx/2.
ConservedState euler_update(const ConservedState& minus, const ConservedState& plus, double x_bar,
                            double dx, double lambda);

/// Same as euler_update, also returning q, eta and xi.
EulerTerms euler_update_terms(const ConservedState& minus, const ConservedState& plus,
                              double x_bar, double dx, double lambda);

/// Initial level: data sampled at the cell midpoints (left limit at jumps).
Level initial_level(const PiecewiseData& data, const GridSpec& grid);

/// Advances `level` by one time step. `threads` > 1 splits the node loop;
/// results are identical to the sequential loop.
Level step(const Level& level, const GridSpec& grid, int threads = 1);

/// Per-level extrema recorded during a run.
struct LevelStats {
  int n = 0;
  double t = 0.0;
  double min_margin = 0.0;   ///< min over nodes of (a - |b|) / a
  double p_min = 0.0;
  double p_max = 0.0;
  double boundary_b = 0.0;   ///< b at x = 0 on even levels, 0 otherwise
  std::size_t violations = 0;
};

LevelStats level_stats(const Level& level);

struct RunOptions {
  std::vector<double> snapshot_times;
  bool keep_history = false;
  int history_decimation = 1;  ///< keep levels with (n - 1) % decimation == 0
  int threads = 1;
};

struct Snapshot {
  double requested_time = 0.0;
  Level level;
};

struct SimulationResult {
  GridSpec grid;
  Level final_level;
  std::vector<Snapshot> snapshots;
  std::vector<Level> history;
  std::vector<LevelStats> stats;
};

/// Called with every level, starting with the initial one.
using LevelObserver = std::function<void(const Level&)>;

/// Level index whose time is closest to t (ties go to the smaller index).
int nearest_level(const GridSpec& grid, double t);

SimulationResult run(const PiecewiseData& data, const GridSpec& grid, const RunOptions& options = {},
                     const LevelObserver& observer = {});

}  // namespace ultrarad

#endif  // ULTRARAD_SCHEME_HPP
