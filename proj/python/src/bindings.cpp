#include "polaritonkit/errors.hpp"
#include "polaritonkit/fock_oracle.hpp"
#include "polaritonkit/magnetic_field.hpp"
#include "polaritonkit/meanfield.hpp"
#include "polaritonkit/model.hpp"
#include "polaritonkit/observables.hpp"
#include "polaritonkit/photon_stats.hpp"
#include "polaritonkit/spectrum.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace polaritonkit;

namespace {

ModelParams make_params(double lambda, double gamma2, double omega_trap, int n_particles, bool include_a2) {
    ModelParams p{lambda, gamma2, omega_trap, n_particles, include_a2};
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "polaritonkit native core";
    m.attr("__version__") = "0.1.0";

    py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
    py::register_exception<InstabilityError>(m, "InstabilityError", PyExc_ArithmeticError);
    py::register_exception<UndefinedAtDecoupling>(m, "UndefinedAtDecoupling", PyExc_ArithmeticError);
    py::register_exception<UnconvergedState>(m, "UnconvergedState", PyExc_RuntimeError);
    py::register_exception<SolverNonConvergence>(m, "SolverNonConvergence", PyExc_RuntimeError);
    py::register_exception<DegenerateFit>(m, "DegenerateFit", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init(&make_params), py::arg("lambda_") = 0.0, py::arg("gamma2") = 1.0,
             py::arg("omega_trap") = 1.0, py::arg("n_particles") = 1, py::arg("include_a2") = true)
        .def_readwrite("lambda_", &ModelParams::lambda)
        .def_readwrite("gamma2", &ModelParams::gamma2)
        .def_readwrite("omega_trap", &ModelParams::omega_trap)
        .def_readwrite("n_particles", &ModelParams::n_particles)
        .def_readwrite("include_a2", &ModelParams::include_a2)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(lambda_=" + std::to_string(p.lambda) + ", gamma2=" + std::to_string(p.gamma2) +
                   ", omega_trap=" + std::to_string(p.omega_trap) + ", n_particles=" +
                   std::to_string(p.n_particles) + ", include_a2=" + (p.include_a2 ? "True" : "False") + ")";
        });

    py::class_<DerivedFrequencies>(m, "DerivedFrequencies")
        .def_readonly("omega_cavity", &DerivedFrequencies::omega_cavity)
        .def_readonly("omega_d", &DerivedFrequencies::omega_d)
        .def_readonly("omega_tilde", &DerivedFrequencies::omega_tilde)
        .def_readonly("g_collective", &DerivedFrequencies::g_collective);
    m.def("derive", &derive);

    py::class_<PolaritonSpectrum>(m, "PolaritonSpectrum")
        .def_readonly("omega_plus", &PolaritonSpectrum::omega_plus)
        .def_readonly("omega_plus_sq", &PolaritonSpectrum::omega_plus_sq)
        .def_readonly("omega_minus_sq", &PolaritonSpectrum::omega_minus_sq)
        .def_readonly("omega_minus", &PolaritonSpectrum::omega_minus)
        .def_readonly("mixing_lambda", &PolaritonSpectrum::mixing_lambda)
        .def_readonly("alpha", &PolaritonSpectrum::alpha)
        .def_readonly("stable", &PolaritonSpectrum::stable)
        .def_readonly("cos2", &PolaritonSpectrum::cos2)
        .def_readonly("sin2", &PolaritonSpectrum::sin2);
    m.def("polariton_modes", &polariton_modes);
    m.def("mixing_matrix", &mixing_matrix);
    m.def("instability_onset", &instability_onset, py::arg("gamma2"));

    py::class_<EffectiveMassResult>(m, "EffectiveMassResult")
        .def_readonly("mass_ratio", &EffectiveMassResult::mass_ratio)
        .def_readonly("fwhm_ratio", &EffectiveMassResult::fwhm_ratio);
    m.def("effective_mass", &effective_mass);
    m.def("cm_position_variance", &cm_position_variance);
    m.def("cm_momentum_variance", &cm_momentum_variance);
    m.def(
        "resonance_argmax",
        [](double lambda, const std::vector<double>& grid) {
            const auto r = resonance_argmax(lambda, grid);
            return py::make_tuple(r.gamma2, r.mass_ratio, r.degenerate);
        },
        py::arg("lambda_"), py::arg("gamma2_grid"));

    py::class_<PhotonStats>(m, "PhotonStats")
        .def_readonly("occupation", &PhotonStats::occupation)
        .def_readonly("two_point", &PhotonStats::two_point)
        .def_readonly("four_point", &PhotonStats::four_point)
        .def_readonly("mandel_q", &PhotonStats::mandel_q);
    m.def("photon_stats", &photon_stats);
    m.def("mandel_q", &mandel_q);

    py::class_<OracleConfig>(m, "OracleConfig")
        .def(py::init<>())
        .def_readwrite("n_start", &OracleConfig::n_start)
        .def_readwrite("n_step", &OracleConfig::n_step)
        .def_readwrite("n_max", &OracleConfig::n_max)
        .def_readwrite("energy_tol", &OracleConfig::energy_tol);
    py::class_<FockGroundState>(m, "FockGroundState")
        .def_readonly("n_cut", &FockGroundState::n_cut)
        .def_readonly("energy", &FockGroundState::energy)
        .def_readonly("converged", &FockGroundState::converged)
        .def_readonly("energy_change", &FockGroundState::energy_change);
    py::enum_<Observable>(m, "Observable")
        .value("occupation", Observable::occupation)
        .value("two_point", Observable::two_point)
        .value("four_point", Observable::four_point)
        .value("x_variance", Observable::x_variance)
        .value("p_variance", Observable::p_variance);
    m.def("solve_converged", &solve_converged, py::arg("params"), py::arg("config") = OracleConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("measure", &measure);

    py::class_<BFieldSpectrum>(m, "BFieldSpectrum")
        .def_readonly("omega_b_ratio", &BFieldSpectrum::omega_b_ratio)
        .def_readonly("delta_plus", &BFieldSpectrum::delta_plus)
        .def_readonly("delta_minus", &BFieldSpectrum::delta_minus)
        .def_readonly("omega_plus_b", &BFieldSpectrum::omega_plus_b)
        .def_readonly("omega_minus_b", &BFieldSpectrum::omega_minus_b)
        .def_readonly("gap_b", &BFieldSpectrum::gap_b)
        .def_readonly("beyond_weak_field", &BFieldSpectrum::beyond_weak_field);
    m.def("bfield_spectrum", &bfield_spectrum, py::arg("params"), py::arg("omega_b_ratio"));
    m.def("landau_zener", &landau_zener, py::arg("params"), py::arg("omega_b_ratio"), py::arg("velocity_factor"));
    m.def("critical_field", &critical_field, py::arg("params"), py::arg("gamma2_offres"),
          py::arg("velocity_factor"));

    py::class_<MeanFieldGrid>(m, "MeanFieldGrid")
        .def(py::init<>())
        .def_readwrite("x_max", &MeanFieldGrid::x_max)
        .def_readwrite("n_points", &MeanFieldGrid::n_points);
    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("dtau", &SolverConfig::dtau)
        .def_readwrite("energy_tol", &SolverConfig::energy_tol)
        .def_readwrite("residual_tol", &SolverConfig::residual_tol)
        .def_readwrite("max_steps", &SolverConfig::max_steps)
        .def_readwrite("refinements", &SolverConfig::refinements);
    py::class_<DensityDifference>(m, "DensityDifference")
        .def_readonly("grid", &DensityDifference::grid)
        .def_readonly("per_particle", &DensityDifference::per_particle)
        .def_readonly("total", &DensityDifference::total)
        .def_readonly("n_particles", &DensityDifference::n_particles)
        .def("centre_total", &DensityDifference::centre_total);
    m.def("density_difference",
          py::overload_cast<const ModelParams&, const MeanFieldGrid&, const SolverConfig&>(&density_difference),
          py::arg("params"), py::arg("grid") = MeanFieldGrid{}, py::arg("config") = SolverConfig{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<ScalingFit>(m, "ScalingFit")
        .def_readonly("exponent_z", &ScalingFit::exponent_z)
        .def_readonly("prefactor", &ScalingFit::prefactor)
        .def_readonly("r_squared", &ScalingFit::r_squared)
        .def_readonly("n_values", &ScalingFit::n_values)
        .def_readonly("center_values", &ScalingFit::center_values);
    m.def(
        "scaling_exponent",
        [](double lambda_per_sqrt_n, const std::vector<int>& n_values, double gamma2) {
            CouplingFamily family;
            family.lambda_per_sqrt_n = lambda_per_sqrt_n;
            family.gamma2 = gamma2;
            py::gil_scoped_release release;
            return scaling_exponent(family, n_values);
        },
        py::arg("lambda_per_sqrt_n"), py::arg("n_values"), py::arg("gamma2") = 1.0);
    m.def(
        "fit_power_law",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            const auto f = fit_power_law(x, y);
            return py::make_tuple(f.exponent, f.prefactor, f.r_squared);
        },
        py::arg("x"), py::arg("y"));
}
