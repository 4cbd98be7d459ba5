#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>


#include "caloric/acceptance.hpp"
#include "caloric/caloric_zoo.hpp"
#include "caloric/error.hpp"
#include "caloric/experiment.hpp"
#include "caloric/norms.hpp"
#include "caloric/representation.hpp"
#include "caloric/semigroup.hpp"

namespace py = pybind11;
using namespace caloric;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Samples to_samples(const SpatialGrid& grid, const Array& a) {
    if (static_cast<std::size_t>(a.size()) != grid.size()) {
        throw Error(ErrorKind::Argument, "array has " + std::to_string(a.size()) + " values, grid has " +
                                             std::to_string(grid.size()));
    }
    return Samples(a.data(), a.data() + a.size());
}

py::array_t<double> to_array(const SpatialGrid& grid, const Samples& s) {
    const auto n = static_cast<py::ssize_t>(grid.points_per_axis());
    if (grid.dim() == 1) return py::array_t<double>({n}, s.data());
    return py::array_t<double>({n, n}, s.data());
}

}  // namespace

PYBIND11_MODULE(_caloric, m) {
    m.doc() = "Heat semigroup experiments on uniform grids";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::object(py::exception<Error>(m, "CaloricError", PyExc_ValueError)); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = error_type.get_stored()(e.what());
            exc.attr("kind") = py::str(std::string(to_string(e.kind())));
            PyErr_SetObject(error_type.get_stored().ptr(), exc.ptr());
        }
    });

    py::enum_<BoundaryMode>(m, "BoundaryMode")
        .value("periodic", BoundaryMode::periodic)
        .value("zero_padded", BoundaryMode::zero_padded);
    py::enum_<HeatMethod>(m, "HeatMethod")
        .value("kernel", HeatMethod::kernel_quadrature)
        .value("spectral", HeatMethod::spectral_multiplier);
    py::enum_<GrowthVerdict>(m, "GrowthVerdict")
        .value("PASS", GrowthVerdict::pass)
        .value("FAIL", GrowthVerdict::fail)
        .value("INCONCLUSIVE", GrowthVerdict::inconclusive);

    py::class_<SpatialGrid>(m, "SpatialGrid")
        .def(py::init<int, double, double, BoundaryMode>(), py::arg("dim"), py::arg("L"), py::arg("dx"),
             py::arg("mode") = BoundaryMode::zero_padded)
        .def_property_readonly("dim", &SpatialGrid::dim)
        .def_property_readonly("L", &SpatialGrid::half_extent)
        .def_property_readonly("dx", &SpatialGrid::spacing)
        .def_property_readonly("mode", &SpatialGrid::mode)
        .def_property_readonly("n", &SpatialGrid::points_per_axis)
        .def("coordinates", [](const SpatialGrid& g) {
            Samples x(g.points_per_axis());
            for (std::size_t j = 0; j < x.size(); ++j) x[j] = g.coordinate(j);
            return py::array_t<double>(static_cast<py::ssize_t>(x.size()), x.data());
        })
        .def("refined", &SpatialGrid::refined, py::arg("factor") = 2)
        .def("integrate", [](const SpatialGrid& g, const Array& a) { return integrate_grid(g, to_samples(g, a)); });

    py::class_<HeatOperatorConfig>(m, "HeatOperatorConfig")
        .def(py::init<>())
        .def_readwrite("method", &HeatOperatorConfig::method)
        .def_readwrite("truncation_factor", &HeatOperatorConfig::truncation_factor)
        .def_readwrite("mass_normalization", &HeatOperatorConfig::mass_normalization);

    m.def(
        "heat_evolve",
        [](const SpatialGrid& g, const Array& f, double t, const HeatOperatorConfig& cfg) {
            return to_array(g, heat_evolve(g, to_samples(g, f), t, cfg));
        },
        py::arg("grid"), py::arg("f"), py::arg("t"), py::arg("config") = HeatOperatorConfig{});

    py::class_<AnalyticSolution>(m, "AnalyticSolution")
        .def_static("parse", &AnalyticSolution::parse, py::arg("id"), py::arg("dim") = 1)
        .def_property_readonly("id", &AnalyticSolution::id)
        .def_property_readonly("dim", &AnalyticSolution::dim)
        .def("value", [](const AnalyticSolution& u, double t, double x, double y) { return u.value(t, {x, y}); },
             py::arg("t"), py::arg("x"), py::arg("y") = 0.0)
        .def("sample", [](const AnalyticSolution& u, const SpatialGrid& g, double t) {
            u.check_time(t);
            return to_array(g, sample(g, [&](const Point& x) { return u.value(t, x); }));
        });

    m.def(
        "heat_residual",
        [](const AnalyticSolution& u, double t_lo, double t_hi, double x_lo, double x_hi, int order) {
            ProbeRegion r{t_lo, t_hi, x_lo, x_hi};
            r.order = order;
            return heat_residual(u, r);
        },
        py::arg("solution"), py::arg("t_lo"), py::arg("t_hi"), py::arg("x_lo"), py::arg("x_hi"), py::arg("order") = 4);

    py::class_<SchwartzProbe>(m, "SchwartzProbe")
        .def_static("parse", &SchwartzProbe::parse, py::arg("id"), py::arg("dim") = 1)
        .def_static("hermite", &SchwartzProbe::hermite, py::arg("dim"), py::arg("k"), py::arg("sigma"))
        .def_property_readonly("id", &SchwartzProbe::id)
        .def("value", [](const SchwartzProbe& p, double x, double y) { return p.value({x, y}); }, py::arg("x"),
             py::arg("y") = 0.0);

    py::class_<TestFunction>(m, "TestFunction")
        .def_static("parse", &TestFunction::parse, py::arg("id"), py::arg("dim") = 1)
        .def_property_readonly("id", &TestFunction::id)
        .def("value", [](const TestFunction& h, double x, double y) { return h.value({x, y}); }, py::arg("x"),
             py::arg("y") = 0.0);

    py::class_<InitialDatum>(m, "InitialDatum")
        .def_static("parse", &InitialDatum::parse, py::arg("id"), py::arg("dim") = 1)
        .def_property_readonly("id", &InitialDatum::id)
        .def("evolved", [](const InitialDatum& f, double t, double x, double y) { return f.evolved(t, {x, y}); },
             py::arg("t"), py::arg("x"), py::arg("y") = 0.0)
        .def("pairing", &InitialDatum::pairing)
        .def("evolved_pairing", &InitialDatum::evolved_pairing)
        .def("sample", [](const InitialDatum& f, const SpatialGrid& g) { return to_array(g, f.sample(g)); });

    py::class_<GrowthFit>(m, "GrowthFit")
        .def_readonly("gamma_hat", &GrowthFit::gamma_hat)
        .def_readonly("logC_hat", &GrowthFit::logC_hat)
        .def_readonly("r2", &GrowthFit::r2_of_fit)
        .def_readonly("radii", &GrowthFit::radii)
        .def_readonly("l2_values", &GrowthFit::l2_values)
        .def_readonly("verdict", &GrowthFit::verdict);
    m.def(
        "growth_fit",
        [](const AnalyticSolution& u, const SpatialGrid& g, double a, double b, int samples,
           const std::vector<double>& radii) {
            const StripSpec strip(a, b);
            require(samples >= 2, ErrorKind::Argument, "strip needs at least 2 time samples");
            std::vector<double> times(static_cast<std::size_t>(samples));
            for (int i = 0; i < samples; ++i) times[static_cast<std::size_t>(i)] = a + (b - a) * i / (samples - 1);
            return strip_growth_fit(sample_field(u, g, times), strip, radii);
        },
        py::arg("solution"), py::arg("grid"), py::arg("a"), py::arg("b"), py::arg("samples"), py::arg("radii"));

    py::class_<HomotopyReport>(m, "HomotopyReport")
        .def_readonly("grid_level", &HomotopyReport::grid_level)
        .def_readonly("lhs", &HomotopyReport::lhs)
        .def_readonly("rhs", &HomotopyReport::rhs)
        .def_readonly("residual", &HomotopyReport::residual);
    m.def(
        "homotopy_levels",
        [](const AnalyticSolution& u, const SpatialGrid& g, double s, double t, const TestFunction& h, int levels,
           const HeatOperatorConfig& cfg) { return homotopy_levels(u, g, s, t, h, levels, cfg); },
        py::arg("solution"), py::arg("grid"), py::arg("s"), py::arg("t"), py::arg("h"), py::arg("levels") = 3,
        py::arg("config") = HeatOperatorConfig{});

    py::class_<ProbeRecovery>(m, "ProbeRecovery")
        .def_readonly("probe_id", &ProbeRecovery::probe_id)
        .def_readonly("times", &ProbeRecovery::times)
        .def_readonly("pairings", &ProbeRecovery::pairings)
        .def_readonly("extrapolated", &ProbeRecovery::extrapolated)
        .def_readonly("exact", &ProbeRecovery::exact)
        .def_readonly("error", &ProbeRecovery::error)
        .def_readonly("recoverable", &ProbeRecovery::recoverable);
    py::class_<RecoveryReport>(m, "RecoveryReport")
        .def_readonly("probes", &RecoveryReport::probes)
        .def_readonly("all_recoverable", &RecoveryReport::all_recoverable)
        .def_readonly("max_error", &RecoveryReport::max_error);
    const auto recover = [](const SnapshotSource& src, const SpatialGrid& g, double t0, double q, int K,
                            const std::vector<SchwartzProbe>& panel) {
        const SnapshotLadder ladder = K > 0 ? SnapshotLadder(t0, q, K) : SnapshotLadder::down_to_resolution(t0, q, g);
        ladder.check_resolution(g);
        return recover_initial_data(src, ladder, panel);
    };
    m.def(
        "recover",
        [recover](const AnalyticSolution& u, const SpatialGrid& g, double t0, double q, int K,
                  const std::vector<SchwartzProbe>& panel) {
            return recover(SnapshotSource::from_solution(u, g), g, t0, q, K, panel);
        },
        py::arg("source"), py::arg("grid"), py::arg("t0") = 0.5, py::arg("q") = 0.5, py::arg("K") = 0,
        py::arg("panel"));
    m.def(
        "recover",
        [recover](const InitialDatum& f, const SpatialGrid& g, double t0, double q, int K,
                  const std::vector<SchwartzProbe>& panel) {
            return recover(SnapshotSource::from_datum(f, g), g, t0, q, K, panel);
        },
        py::arg("source"), py::arg("grid"), py::arg("t0") = 0.5, py::arg("q") = 0.5, py::arg("K") = 0,
        py::arg("panel"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_static("parse", &ExperimentConfig::parse)
        .def_static("load", &ExperimentConfig::load)
        .def("serialize", &ExperimentConfig::serialize)
        .def("validate", &ExperimentConfig::validate)
        .def("__eq__", &ExperimentConfig::operator==)
        .def_readwrite("pipeline", &ExperimentConfig::pipeline)
        .def_readwrite("solution", &ExperimentConfig::solution)
        .def_readwrite("datum", &ExperimentConfig::datum)
        .def_readwrite("dx", &ExperimentConfig::dx)
        .def_readwrite("L", &ExperimentConfig::L)
        .def_readwrite("grid_levels", &ExperimentConfig::grid_levels)
        .def_readwrite("strip_a", &ExperimentConfig::strip_a)
        .def_readwrite("strip_b", &ExperimentConfig::strip_b)
        .def_readwrite("ladder_K", &ExperimentConfig::ladder_K)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir);
    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("exit_code", &ExperimentResult::exit_code)
        .def_readonly("summary", &ExperimentResult::summary)
        .def_readonly("files", &ExperimentResult::files)
        .def_readonly("message", &ExperimentResult::message);
    m.def("run_experiment", &run_experiment, py::call_guard<py::gil_scoped_release>());
    m.def("pipeline_names", &pipeline_names);

    py::class_<CriterionResult>(m, "CriterionResult")
        .def_readonly("id", &CriterionResult::id)
        .def_readonly("name", &CriterionResult::name)
        .def_readonly("passed", &CriterionResult::pass)
        .def_readonly("detail", &CriterionResult::detail);
    m.def("run_acceptance", &run_acceptance, py::call_guard<py::gil_scoped_release>());
}
