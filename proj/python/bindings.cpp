// Python bindings: state algebra, the linearized solution, the scheme and
// the diagnostics. Levels come back as dicts of NumPy arrays.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ultrarad/config.hpp"
#include "ultrarad/diagnostics.hpp"
#include "ultrarad/linear.hpp"
#include "ultrarad/scheme.hpp"
#include "ultrarad/state.hpp"

namespace py = pybind11;
using namespace ultrarad;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict level_dict(const Level& level) {
  std::vector<double> a(level.size()), b(level.size()), p(level.size()), v(level.size());
  for (std::size_t j = 0; j < level.size(); ++j) {
    a[j] = level.states[j].a;
    b[j] = level.states[j].b;
    const PrimitiveState s = to_primitive(level.states[j]);
    p[j] = s.p;
    v[j] = three_velocity(s.u);
  }
  py::dict d;
  d["n"] = level.n;
  d["t"] = level.t;
  d["x"] = to_array(level.x);
  d["a"] = to_array(a);
  d["b"] = to_array(b);
  d["p"] = to_array(p);
  d["v"] = to_array(v);
  return d;
}

Level level_from(double t, int n, const std::vector<double>& x, const std::vector<double>& a,
                 const std::vector<double>& b) {
  if (x.size() != a.size() || x.size() != b.size()) throw std::invalid_argument("x, a, b differ in length");
  Level level;
  level.n = n;
  level.t = t;
  level.x = x;
  for (std::size_t j = 0; j < x.size(); ++j) level.states.push_back({a[j], b[j]});
  return level;
}

PiecewiseData preset_data(const std::string& name) {
  if (name == "example1") return rest_state_data();
  if (name == "example2") return outflow_data();
  if (name == "example3") return inflow_data();
  if (name == "example4") return bubble_data();
  if (name == "imploding_shock") return imploding_shock_data();
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Radially symmetric ultra-relativistic Euler equations";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<GridError>(m, "GridError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<diagnostics::NoShockError>(m, "NoShockError", PyExc_RuntimeError);

  py::class_<ConservedState>(m, "ConservedState")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_readwrite("a", &ConservedState::a)
      .def_readwrite("b", &ConservedState::b)
      .def("__repr__", [](const ConservedState& s) {
        return "ConservedState(a=" + std::to_string(s.a) + ", b=" + std::to_string(s.b) + ")";
      });
  py::class_<PrimitiveState>(m, "PrimitiveState")
      .def(py::init<double, double>(), py::arg("p"), py::arg("u"))
      .def_readwrite("p", &PrimitiveState::p)
      .def_readwrite("u", &PrimitiveState::u);

  m.def("to_conserved", &to_conserved, py::arg("state"));
  m.def("to_primitive", &to_primitive, py::arg("state"));
  m.def("flux_c", &flux_c, py::arg("state"));
  m.def("pressure", &pressure, py::arg("state"));
  m.def("three_velocity", &three_velocity, py::arg("u"));
  m.def("four_velocity", &four_velocity, py::arg("v"));
  m.def("entropy_pair", [](const ConservedState& s) {
    const EntropyPair e = entropy_pair(s);
    return py::make_tuple(e.density, e.flux);
  });

  py::class_<PiecewiseLinear>(m, "PiecewiseLinear")
      .def_static("constant", &PiecewiseLinear::constant, py::arg("value"))
      .def_static("step", &PiecewiseLinear::step, py::arg("radius"), py::arg("inner"), py::arg("outer"))
      .def_static(
          "interpolate",
          [](const std::vector<double>& xs, const std::vector<double>& ys) { return PiecewiseLinear::interpolate(xs, ys); },
          py::arg("xs"), py::arg("ys"))
      .def("__call__", &PiecewiseLinear::operator(), py::arg("x"))
      .def_property_readonly("breaks", &PiecewiseLinear::breaks);

  py::class_<PiecewiseData>(m, "PiecewiseData")
      .def_static("conserved", &PiecewiseData::conserved, py::arg("a0"), py::arg("b0"))
      .def_static("primitive", &PiecewiseData::primitive, py::arg("p0"), py::arg("v0"))
      .def_static("preset", &preset_data, py::arg("name"))
      .def("sample", &PiecewiseData::sample, py::arg("x"));

  m.def("eval_linear", &linear::eval_linear, py::arg("t"), py::arg("x"), py::arg("data"));
  m.def("eval_linear_many", [](const PiecewiseData& data, double t, const std::vector<double>& xs) {
    const linear::LinearSolution solution(data);
    std::vector<double> a, b;
    for (double x : xs) {
      const ConservedState s = solution(t, x);
      a.push_back(s.a);
      b.push_back(s.b);
    }
    return py::make_tuple(to_array(a), to_array(b));
  });
  m.def("rh_speed_linear", &linear::rh_speed_linear, py::arg("left"), py::arg("right"));

  py::class_<GridSpec>(m, "GridSpec")
      .def_readonly("t_star", &GridSpec::t_star)
      .def_readonly("x_star", &GridSpec::x_star)
      .def_readonly("N", &GridSpec::N)
      .def_readonly("M", &GridSpec::M)
      .def_readonly("dt", &GridSpec::dt)
      .def_readonly("dx", &GridSpec::dx)
      .def_readonly("lambda_", &GridSpec::lambda)
      .def("level_count", &GridSpec::level_count);
  m.def("build_grid", &build_grid, py::arg("t_star"), py::arg("x_star"), py::arg("N"));

  m.def("euler_update", &euler_update, py::arg("minus"), py::arg("plus"), py::arg("x_bar"), py::arg("dx"),
        py::arg("lambda_"));

  m.def(
      "run",
      [](const PiecewiseData& data, const GridSpec& grid, const std::vector<double>& snapshot_times, int threads) {
        RunOptions options;
        options.snapshot_times = snapshot_times;
        options.threads = threads;
        SimulationResult r;
        {
          py::gil_scoped_release release;
          r = run(data, grid, options);
        }
        py::dict out;
        out["final"] = level_dict(r.final_level);
        py::list snaps;
        for (const auto& s : r.snapshots) snaps.append(level_dict(s.level));
        out["snapshots"] = snaps;
        std::vector<double> margin;
        for (const auto& s : r.stats) margin.push_back(s.min_margin);
        out["min_margin"] = to_array(margin);
        return out;
      },
      py::arg("data"), py::arg("grid"), py::arg("snapshot_times") = std::vector<double>{}, py::arg("threads") = 1);

  m.def(
      "detect_shock",
      [](double t, int n, const std::vector<double>& x, const std::vector<double>& a, const std::vector<double>& b) {
        return diagnostics::detect_shock(level_from(t, n, x, a, b));
      },
      py::arg("t"), py::arg("n"), py::arg("x"), py::arg("a"), py::arg("b"));
  m.def(
      "shock_speed",
      [](const std::vector<double>& times, const std::vector<double>& positions) {
        diagnostics::ShockTrack track{times, positions};
        return diagnostics::shock_speed(track);
      },
      py::arg("times"), py::arg("positions"));
  m.def("shock_admissible", &diagnostics::shock_admissible, py::arg("left"), py::arg("right"));
}
