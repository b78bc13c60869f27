#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tunneltime/atom.hpp"
#include "tunneltime/barrier.hpp"
#include "tunneltime/clocks.hpp"
#include "tunneltime/errors.hpp"
#include "tunneltime/harness.hpp"
#include "tunneltime/units.hpp"

namespace py = pybind11;
using namespace tunneltime;

namespace {

LaserField as_field(const py::object& field) {
    if (py::isinstance<LaserField>(field)) {
        return field.cast<LaserField>();
    }
    return LaserField::direct(field.cast<double>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Tunneling-time model for strong-field ionization (C++ core)";

    py::register_exception<RegimeError>(m, "RegimeError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

    py::dict constants;
    constants["au_time_in_attoseconds"] = kConstants.au_time_in_attoseconds;
    constants["speed_of_light"] = kConstants.speed_of_light;
    constants["intensity_au_in_w_per_cm2"] = kConstants.intensity_au_in_w_per_cm2;
    constants["hartree_in_ev"] = kConstants.hartree_in_ev;
    constants["version"] = std::string(kConstants.version);
    m.attr("constants") = constants;

    m.def("au_time_to_attoseconds", &au_time_to_attoseconds, py::arg("t_au"));
    m.def("attoseconds_to_au_time", &attoseconds_to_au_time, py::arg("t_as"));
    m.def("intensity_to_field", &intensity_to_field, py::arg("intensity_w_per_cm2"));
    m.def("field_to_intensity", &field_to_intensity, py::arg("field_au"));
    m.def("elliptical_peak_field", &elliptical_peak_field, py::arg("f0_au"), py::arg("eps"));
    m.def("wavelength_to_angular_frequency", &wavelength_to_angular_frequency, py::arg("lambda_nm"));

    py::class_<AtomModel>(m, "AtomModel")
        .def(py::init(&AtomModel::create), py::arg("name"), py::arg("ip"), py::arg("z_eff"),
             py::arg("source") = "python")
        .def_readonly("name", &AtomModel::name)
        .def_readonly("ip", &AtomModel::ip)
        .def_readonly("z_eff", &AtomModel::z_eff)
        .def_readonly("source", &AtomModel::source)
        .def_property_readonly("label", &AtomModel::label)
        .def("__repr__", [](const AtomModel& a) {
            std::ostringstream os;
            os << "AtomModel(" << a.label() << ", ip=" << a.ip << ", z_eff=" << a.z_eff << ")";
            return os.str();
        });

    py::enum_<FieldOrigin>(m, "FieldOrigin")
        .value("direct", FieldOrigin::direct)
        .value("from_intensity", FieldOrigin::from_intensity)
        .value("from_f0_ellipticity", FieldOrigin::from_f0_ellipticity);

    py::class_<LaserField>(m, "LaserField")
        .def_static("direct", &LaserField::direct, py::arg("f_au"))
        .def_static("from_intensity", &LaserField::from_intensity, py::arg("intensity_w_per_cm2"))
        .def_static("from_f0_ellipticity", &LaserField::from_f0_ellipticity, py::arg("f0_au"), py::arg("eps"))
        .def("with_wavelength", &LaserField::with_wavelength, py::arg("lambda_nm"))
        .def_readonly("f_peak", &LaserField::f_peak)
        .def_readonly("wavelength_nm", &LaserField::wavelength_nm)
        .def_readonly("ellipticity", &LaserField::ellipticity)
        .def_readonly("origin", &LaserField::origin)
        .def_property_readonly("omega", &LaserField::omega);

    m.def("builtin_catalog", &builtin_catalog);
    m.def("find_in_catalog", &find_in_catalog, py::arg("name"), py::arg("model") = "");
    m.def("load_atom", &load_atom, py::arg("config"));

    py::enum_<Regime>(m, "Regime")
        .value("sub_atomic", Regime::sub_atomic)
        .value("atomic", Regime::atomic)
        .value("super_atomic", Regime::super_atomic);

    py::class_<BarrierGeometry>(m, "BarrierGeometry")
        .def_readonly("f", &BarrierGeometry::f)
        .def_readonly("delta_z", &BarrierGeometry::delta_z)
        .def_readonly("delta_z_imag", &BarrierGeometry::delta_z_imag)
        .def_readonly("x_entrance", &BarrierGeometry::x_entrance)
        .def_readonly("x_exit", &BarrierGeometry::x_exit)
        .def_readonly("x_classical", &BarrierGeometry::x_classical)
        .def_readonly("x_peak", &BarrierGeometry::x_peak)
        .def_readonly("barrier_width", &BarrierGeometry::barrier_width)
        .def_readonly("h_max", &BarrierGeometry::h_max)
        .def_readonly("regime", &BarrierGeometry::regime);

    m.def("atomic_field_strength", &atomic_field_strength, py::arg("atom"));
    m.def("effective_potential", [](double x, const AtomModel& a, const py::object& f) {
        return effective_potential(x, a, as_field(f));
    }, py::arg("x"), py::arg("atom"), py::arg("field"));
    m.def("barrier_height", [](double x, const AtomModel& a, const py::object& f) {
        return barrier_height(x, a, as_field(f));
    }, py::arg("x"), py::arg("atom"), py::arg("field"));
    m.def("delta_z", [](const AtomModel& a, const py::object& f) {
        const DeltaZ dz = delta_z(a, as_field(f));
        return py::make_tuple(dz.real, dz.imag);
    }, py::arg("atom"), py::arg("field"));
    m.def("exit_points", [](const AtomModel& a, const py::object& f) {
        const ExitPoints xs = exit_points(a, as_field(f));
        return py::make_tuple(xs.minus, xs.plus);
    }, py::arg("atom"), py::arg("field"));
    m.def("exit_points_oracle", [](const AtomModel& a, const py::object& f, double tol) {
        const ExitPoints xs = exit_points_oracle(a, as_field(f), tol);
        return py::make_tuple(xs.minus, xs.plus);
    }, py::arg("atom"), py::arg("field"), py::arg("tol") = 1e-12);
    m.def("solve_geometry", [](const AtomModel& a, const py::object& f) { return solve_geometry(a, as_field(f)); },
          py::arg("atom"), py::arg("field"));

    py::class_<ComplexTimes>(m, "ComplexTimes")
        .def_readonly("delay", &ComplexTimes::delay)
        .def_readonly("initial", &ComplexTimes::initial);

    py::class_<TunnelClocks>(m, "TunnelClocks")
        .def_readonly("tau_i", &TunnelClocks::tau_i)
        .def_readonly("tau_d", &TunnelClocks::tau_d)
        .def_readonly("tau_sym", &TunnelClocks::tau_sym)
        .def_readonly("tau_unsy", &TunnelClocks::tau_unsy)
        .def_readonly("tau_c", &TunnelClocks::tau_c)
        .def_readonly("tau_t", &TunnelClocks::tau_t)
        .def_readonly("tau_a", &TunnelClocks::tau_a)
        .def_readonly("de_plus", &TunnelClocks::de_plus)
        .def_readonly("de_minus", &TunnelClocks::de_minus)
        .def_readonly("complex_parts", &TunnelClocks::complex_parts);

    m.def("compute_clocks", &compute_clocks, py::arg("geometry"), py::arg("atom"));
    m.def("keldysh_gamma", [](const AtomModel& a, const py::object& f, double omega) {
        return keldysh_gamma(a, as_field(f), omega);
    }, py::arg("atom"), py::arg("field"), py::arg("omega"));

    py::class_<TimesAs>(m, "TimesAs")
        .def_readonly("tau_i", &TimesAs::tau_i)
        .def_readonly("tau_d", &TimesAs::tau_d)
        .def_readonly("tau_sym", &TimesAs::tau_sym)
        .def_readonly("tau_unsy", &TimesAs::tau_unsy)
        .def_readonly("tau_c", &TimesAs::tau_c)
        .def_readonly("tau_t", &TimesAs::tau_t)
        .def_readonly("tau_a", &TimesAs::tau_a);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("f", &SweepRow::f)
        .def_readonly("geometry", &SweepRow::geometry)
        .def_readonly("clocks", &SweepRow::clocks)
        .def_readonly("times_as", &SweepRow::times_as)
        .def_readonly("light_traversal_as", &SweepRow::light_traversal_as)
        .def_readonly("keldysh_gamma", &SweepRow::keldysh_gamma);

    m.def("run_sweep", [](const AtomModel& a, const std::vector<double>& grid, std::optional<double> omega) {
        py::gil_scoped_release release;
        return run_sweep(a, grid, omega);
    }, py::arg("atom"), py::arg("f_grid"), py::arg("omega") = py::none());
    m.def("light_traversal_time", &light_traversal_time, py::arg("d_au"));

    py::class_<MeasurementRecord>(m, "MeasurementRecord")
        .def(py::init([](double f, double t, double err_lo, double err_hi, std::string source) {
            return MeasurementRecord{f, t, err_lo, err_hi, std::move(source)};
        }), py::arg("f"), py::arg("t"), py::arg("err_lo"), py::arg("err_hi"), py::arg("source") = "python")
        .def_readonly("f", &MeasurementRecord::f)
        .def_readonly("t", &MeasurementRecord::t)
        .def_readonly("err_lo", &MeasurementRecord::err_lo)
        .def_readonly("err_hi", &MeasurementRecord::err_hi)
        .def_readonly("source", &MeasurementRecord::source);

    m.def("load_measurements", [](const std::filesystem::path& path) {
        MeasurementSet set = load_measurements(path);
        return py::make_tuple(set.records, set.warnings);
    }, py::arg("path"));

    py::class_<PointResidual>(m, "PointResidual")
        .def_readonly("f", &PointResidual::f)
        .def_readonly("model_as", &PointResidual::model_as)
        .def_readonly("measured_as", &PointResidual::measured_as)
        .def_readonly("residual_as", &PointResidual::residual_as)
        .def_readonly("within_bars", &PointResidual::within_bars);

    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("model_id", &ComparisonReport::model_id)
        .def_readonly("points", &ComparisonReport::points)
        .def_readonly("rms", &ComparisonReport::rms)
        .def_readonly("max_abs", &ComparisonReport::max_abs)
        .def_readonly("fraction_within_bars", &ComparisonReport::fraction_within_bars)
        .def_readonly("skipped", &ComparisonReport::skipped)
        .def_readonly("warnings", &ComparisonReport::warnings);

    m.def("compare", [](const AtomModel& a, const std::string& estimator, const std::vector<MeasurementRecord>& data) {
        return compare(a, parse_estimator(estimator), data);
    }, py::arg("atom"), py::arg("estimator"), py::arg("data"));

    m.def("emit_figure_data", [](const AtomModel& a, const std::vector<SweepRow>& rows, const std::string& figure,
                                 const std::string& format, int precision, const std::string& grid) {
        std::ostringstream out;
        const TableOptions options{format == "json" ? TableFormat::json : TableFormat::csv, precision, grid};
        emit_figure_data(a, rows, parse_figure(figure), options, out);
        return out.str();
    }, py::arg("atom"), py::arg("rows"), py::arg("figure"), py::arg("format") = "csv", py::arg("precision") = 6,
       py::arg("grid") = "");
}
