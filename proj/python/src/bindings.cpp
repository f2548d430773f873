#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "rho/classical.hpp"
#include "rho/errors.hpp"
#include "rho/quantum_numeric.hpp"
#include "rho/special_functions.hpp"
#include "rho/spectrum.hpp"

namespace py = pybind11;
using namespace rho;

namespace {

py::array_t<double> map_array(py::array_t<double, py::array::c_style | py::array::forcecast> xs,
                              const std::function<double(double)>& f) {
    py::array_t<double> out(xs.request().shape);
    auto in = xs.unchecked();
    double* dst = out.mutable_data();
    const double* src = xs.data();
    for (py::ssize_t i = 0; i < in.size(); ++i) {
        dst[i] = f(src[i]);
    }
    return out;
}

double optional_or_nan(const std::optional<double>& v) {
    return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

PYBIND11_MODULE(_rho, m) {
    m.doc() = "Relativistic harmonic oscillator family: classical and quantum solutions";

    auto base = py::register_exception<Error>(m, "RhoError", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<OutsideDomain>(m, "OutsideDomain", PyExc_ValueError);
    py::register_exception<ForbiddenEnergy>(m, "ForbiddenEnergy", PyExc_ValueError);
    py::register_exception<OpenMotion>(m, "OpenMotion", base.ptr());
    py::register_exception<HorizonApproach>(m, "HorizonApproach", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<NotNormalizable>(m, "NotNormalizable", base.ptr());

    py::class_<ModelParameters>(m, "ModelParameters")
        .def(py::init<double, double, double>(), py::arg("lam"), py::arg("omega") = 1.0,
             py::arg("mass") = 1.0)
        .def_property_readonly("lam", &ModelParameters::lambda)
        .def_property_readonly("omega", &ModelParameters::omega)
        .def_property_readonly("mass", &ModelParameters::mass)
        .def("__repr__", [](const ModelParameters& p) {
            return "ModelParameters(lam=" + std::to_string(p.lambda()) +
                   ", omega=" + std::to_string(p.omega()) + ", mass=" + std::to_string(p.mass()) + ")";
        });

    py::class_<QuantumLevel>(m, "QuantumLevel")
        .def_readonly("n", &QuantumLevel::n)
        .def_readonly("nprime", &QuantumLevel::nprime)
        .def_readonly("s", &QuantumLevel::s)
        .def_readonly("p", &QuantumLevel::p)
        .def_readonly("energy", &QuantumLevel::energy)
        .def("__repr__", [](const QuantumLevel& l) {
            return "QuantumLevel(n=" + std::to_string(l.n) + ", energy=" + std::to_string(l.energy) + ")";
        });

    m.def("energy_level", &energy_level, py::arg("params"), py::arg("n"));
    m.def(
        "spectrum",
        [](const ModelParameters& p, int max_levels) {
            std::vector<QuantumLevel> levels = discrete_spectrum(p, max_levels).levels;
            if (levels.size() > static_cast<std::size_t>(max_levels)) {
                levels.resize(static_cast<std::size_t>(max_levels));
            }
            return levels;
        },
        py::arg("params"), py::arg("max_levels"),
        "Bound levels n = 0, 1, ... up to max_levels (fewer above a finite n_max).");
    m.def("max_principal_number", &max_principal_number, py::arg("params"));
    m.def(
        "continuum_threshold", [](const ModelParameters& p) { return optional_or_nan(continuum_threshold(p)); },
        py::arg("params"), "Continuum edge for lam > 0, NaN otherwise.");

    m.def(
        "wavefunction",
        [](const ModelParameters& p, int n, py::array_t<double> x, int intervals) {
            const numeric::NormalizedMode mode =
                numeric::normalize(p, energy_level(p, n), numeric::default_grid(p, intervals));
            return map_array(x, [&](double xi) { return mode(xi); });
        },
        py::arg("params"), py::arg("n"), py::arg("x"), py::arg("intervals") = 2048,
        "Normalized bound-state wavefunction evaluated at x.");

    m.def(
        "numeric_energies",
        [](const ModelParameters& p, int k, int intervals, double tolerance) {
            numeric::EigenOptions options;
            options.tolerance = tolerance;
            return numeric::sturm_liouville_eigen(p, k, numeric::default_grid(p, intervals), options).energies;
        },
        py::arg("params"), py::arg("k"), py::arg("intervals") = 1024, py::arg("tolerance") = 1e-6,
        "Lowest k energies from the finite-difference eigen-solver.");

    m.def("effective_frequency", &effective_frequency, py::arg("params"), py::arg("energy"));
    m.def("amplitude", &amplitude, py::arg("params"), py::arg("energy"));
    m.def(
        "classify_motion",
        [](const ModelParameters& p, double e) { return std::string(to_string(classify_motion(p, e))); },
        py::arg("params"), py::arg("energy"));
    m.def(
        "trajectory",
        [](const ModelParameters& p, double energy, py::array_t<double> t, double t0) {
            const ClassicalOrbit orbit = orbit_from_energy(p, energy, t0);
            return map_array(t, [&](double ti) { return trajectory_position(orbit, ti); });
        },
        py::arg("params"), py::arg("energy"), py::arg("t"), py::arg("t0") = 0.0,
        "Closed-form position a sin(Omega (t - t0)).");
    m.def(
        "integrate_geodesic",
        [](const ModelParameters& p, double x0, double v0, double t_max, double sample_step) {
            const GeodesicPath path = integrate_geodesic(p, x0, v0, t_max, sample_step);
            py::array_t<double> out({static_cast<py::ssize_t>(path.samples.size()), py::ssize_t{3}});
            auto a = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < path.samples.size(); ++i) {
                a(i, 0) = path.samples[i].t;
                a(i, 1) = path.samples[i].x;
                a(i, 2) = path.samples[i].v;
            }
            return py::make_tuple(out, path.energy_drift);
        },
        py::arg("params"), py::arg("x0"), py::arg("v0"), py::arg("t_max"), py::arg("sample_step"),
        "Numerical geodesic as an (N, 3) array of (t, x, v), plus the relative energy drift.");

    m.def(
        "hyp2f1", [](double a, double b, double c, double y) { return special::hyp2f1(a, b, c, y).value; },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("y"));
    m.def("hermite", &special::hermite, py::arg("n"), py::arg("z"));
}
