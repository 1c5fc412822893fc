#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hamens/analytic.hpp"
#include "hamens/ensemble.hpp"
#include "hamens/entanglement.hpp"
#include "hamens/validation.hpp"

namespace py = pybind11;
using namespace hamens;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using DArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

DenseComplexMatrix to_matrix(const CArray& a)
{
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw std::invalid_argument("expected a square matrix");
    const auto n = static_cast<std::size_t>(a.shape(0));
    return DenseComplexMatrix(n, std::vector<cplx>(a.data(), a.data() + n * n));
}

CArray to_array(const DenseComplexMatrix& m)
{
    const auto n = static_cast<py::ssize_t>(m.dim());
    CArray out({n, n});
    std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
    return out;
}

TimeGrid to_grid(const DArray& t)
{
    return TimeGrid(std::vector<double>(t.data(), t.data() + t.size()));
}

py::dict to_dict(const Trajectory& traj)
{
    py::dict d;
    d["t"] = DArray(static_cast<py::ssize_t>(traj.grid().size()), traj.grid().times().data());
    for (const auto& c : traj.columns())
        d[py::str(c.name)] = DArray(static_cast<py::ssize_t>(c.values.size()), c.values.data());
    return d;
}

} // namespace

PYBIND11_MODULE(_hamens, m)
{
    m.doc() = "Hamiltonian-ensemble relaxation and entanglement core";

    py::register_exception<DensityError>(m, "DensityError", PyExc_ValueError);

    py::class_<GaussianSpec>(m, "GaussianSpec")
        .def(py::init<double, double>(), py::arg("mean") = 0.0, py::arg("variance") = 0.0)
        .def_readonly("mean", &GaussianSpec::mean)
        .def_readonly("variance", &GaussianSpec::variance);

    py::class_<SingleQubitScenario>(m, "SingleQubitScenario")
        .def(py::init([](double omega_a, double alpha, double xb, double variance, double mean) {
                 return SingleQubitScenario::with_real_amplitude(omega_a, alpha, xb,
                                                                 GaussianSpec(mean, variance));
             }),
             py::arg("omega_a"), py::arg("alpha"), py::arg("xb"), py::arg("variance"),
             py::arg("mean") = 0.0)
        .def_readonly("omega_a", &SingleQubitScenario::omega_a)
        .def_property_readonly("alpha", [](const SingleQubitScenario& s) { return s.coupling.alpha(); })
        .def_readonly("xb", &SingleQubitScenario::xb)
        .def_readonly("noise", &SingleQubitScenario::noise);

    py::class_<TwoQubitScenario>(m, "TwoQubitScenario")
        .def(py::init([](double omega_a, double omega_b, double alpha, double x, double var_a,
                         double var_b) {
                 return TwoQubitScenario(omega_a, omega_b, CouplingLaw(alpha), x,
                                         GaussianSpec(0.0, var_a), GaussianSpec(0.0, var_b));
             }),
             py::arg("omega_a"), py::arg("omega_b"), py::arg("alpha"), py::arg("x"),
             py::arg("var_a"), py::arg("var_b"))
        .def_readonly("omega_a", &TwoQubitScenario::omega_a)
        .def_readonly("omega_b", &TwoQubitScenario::omega_b)
        .def_property_readonly("alpha", [](const TwoQubitScenario& s) { return s.coupling.alpha(); })
        .def_readonly("x", &TwoQubitScenario::x)
        .def_readonly("y", &TwoQubitScenario::y);

    py::class_<AveragedXState>(m, "AveragedXState")
        .def(py::init([](double a, double b, double c, double d, cplx z) {
                 return AveragedXState(XStateElements{a, b, c, d, z});
             }),
             py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("z"))
        .def_property_readonly("a", &AveragedXState::a)
        .def_property_readonly("b", &AveragedXState::b)
        .def_property_readonly("c", &AveragedXState::c)
        .def_property_readonly("d", &AveragedXState::d)
        .def_property_readonly("z", &AveragedXState::z)
        .def("matrix", [](const AveragedXState& x) { return to_array(x.to_matrix()); });

    py::class_<entanglement::CriticalTime>(m, "CriticalTime")
        .def_readonly("t_c", &entanglement::CriticalTime::t_c)
        .def_readonly("t_lo", &entanglement::CriticalTime::t_lo)
        .def_readonly("t_hi", &entanglement::CriticalTime::t_hi);

    m.def("avg_population_single", &analytic::avg_population_single, py::arg("t"), py::arg("s"));
    m.def("avg_coherence_single", &analytic::avg_coherence_single, py::arg("t"), py::arg("s"));
    m.def("avg_xstate_two", &analytic::avg_xstate_two, py::arg("t"), py::arg("s"));
    m.def("steady_population",
          [](double alpha, double xb) { return analytic::steady_population(CouplingLaw(alpha), xb); },
          py::arg("alpha"), py::arg("xb"));
    m.def("thermal_population",
          [](double bd) { return analytic::thermal_population(analytic::ThermalTarget(bd)); },
          py::arg("beta_delta"));
    m.def("invert_thermal",
          [](double p) {
              const auto r = analytic::invert_thermal(p);
              return py::make_tuple(r.alpha, r.xb);
          },
          py::arg("p_plus"), "Return (alpha, xb) whose steady population equals p_plus.");

    m.def("sample_single",
          [](const SingleQubitScenario& s, const DArray& t, std::size_t samples, std::uint64_t seed,
             std::size_t workers) {
              Trajectory traj = [&] {
                  py::gil_scoped_release release;
                  return sample_ensemble(s, SamplingOptions{samples, seed, workers}, to_grid(t));
              }();
              return to_dict(traj);
          },
          py::arg("s"), py::arg("t"), py::arg("samples"), py::arg("seed") = 1,
          py::arg("workers") = 0);
    m.def("sample_two",
          [](const TwoQubitScenario& s, const DArray& t, std::size_t samples, std::uint64_t seed,
             std::size_t workers) {
              Trajectory traj = [&] {
                  py::gil_scoped_release release;
                  return sample_ensemble(s, SamplingOptions{samples, seed, workers}, to_grid(t));
              }();
              return to_dict(traj);
          },
          py::arg("s"), py::arg("t"), py::arg("samples"), py::arg("seed") = 1,
          py::arg("workers") = 0);

    m.def("concurrence_general",
          [](const CArray& rho) {
              return entanglement::concurrence_general(validate_density(to_matrix(rho))).value();
          },
          py::arg("rho"));
    m.def("concurrence_x",
          [](const AveragedXState& x) { return entanglement::concurrence_x(x).value(); },
          py::arg("x"));
    m.def("minimum_t_max", &entanglement::minimum_t_max, py::arg("s"));
    m.def("find_tc", &entanglement::find_tc, py::arg("s"), py::arg("t_max"),
          py::arg("grid_density") = 4000, py::arg("verify_points") = 1000);
    m.def("find_tc_auto", &entanglement::find_tc_auto, py::arg("s"), py::arg("t_max_hint") = 0.0,
          py::arg("grid_density") = 4000);

    m.def("validate",
          [](const std::string& level) {
              if (level != "quick" && level != "full")
                  throw std::invalid_argument("level must be 'quick' or 'full'");
              const auto report = validation::run(level == "full" ? validation::Level::full
                                                                  : validation::Level::quick);
              py::list checks;
              for (const auto& c : report.checks)
                  checks.append(py::dict(py::arg("name") = c.name, py::arg("measured") = c.measured,
                                         py::arg("threshold") = c.threshold,
                                         py::arg("passed") = c.passed));
              return py::make_tuple(report.passed(), checks);
          },
          py::arg("level") = "quick", "Run the oracle suites; returns (passed, checks).");
}
