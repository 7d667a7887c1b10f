// biphoton._core: pybind11 bindings for the qutrit analysis and experiment
// simulation operations.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biphoton/core.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/expsim.hpp"
#include "biphoton/poincare.hpp"
#include "biphoton/report.hpp"

namespace py = pybind11;
using namespace biphoton;

namespace {

py::object root_to_python(const PolynomialRoot& r) {
    if (r.at_infinity) return py::none();
    return py::cast(r.value);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Biphoton polarization qutrits: Schmidt modes, operator "
              "factorization, Poincare-sphere geometry and a coincidence "
              "measurement simulator";

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("norm", &Tolerances::norm)
        .def_readwrite("reconstruction", &Tolerances::reconstruction)
        .def_readwrite("geometric", &Tolerances::geometric);

    py::class_<QutritState>(m, "QutritState")
        .def_readonly("c1", &QutritState::c1)
        .def_readonly("c2", &QutritState::c2)
        .def_readonly("c3", &QutritState::c3)
        .def("__repr__", [](const QutritState& q) {
            return "QutritState(c1=(" + std::to_string(q.c1.real()) + "," +
                   std::to_string(q.c1.imag()) + "j), c2=(" + std::to_string(q.c2.real()) +
                   "," + std::to_string(q.c2.imag()) + "j), c3=(" +
                   std::to_string(q.c3.real()) + "," + std::to_string(q.c3.imag()) + "j))";
        });

    py::class_<JonesVector>(m, "JonesVector")
        .def(py::init<Complex, Complex>(), py::arg("h"), py::arg("v"))
        .def_readonly("h", &JonesVector::h)
        .def_readonly("v", &JonesVector::v)
        .def("norm", &JonesVector::norm);

    py::class_<StokesVector>(m, "StokesVector")
        .def(py::init<double, double, double>(), py::arg("s1"), py::arg("s2"),
             py::arg("s3"))
        .def_readonly("s1", &StokesVector::s1)
        .def_readonly("s2", &StokesVector::s2)
        .def_readonly("s3", &StokesVector::s3)
        .def("norm", &StokesVector::norm);

    py::class_<Mat2>(m, "Mat2")
        .def(py::init<Complex, Complex, Complex, Complex>(), py::arg("m00"),
             py::arg("m01"), py::arg("m10"), py::arg("m11"))
        .def_static("identity", &Mat2::identity)
        .def_readonly("m00", &Mat2::m00)
        .def_readonly("m01", &Mat2::m01)
        .def_readonly("m10", &Mat2::m10)
        .def_readonly("m11", &Mat2::m11)
        .def("apply", &Mat2::apply);

    py::class_<FactorizationResult>(m, "FactorizationResult")
        .def_property_readonly("x_a",
                               [](const FactorizationResult& f) { return root_to_python(f.x_a); })
        .def_property_readonly("x_b",
                               [](const FactorizationResult& f) { return root_to_python(f.x_b); })
        .def_readonly("phi0", &FactorizationResult::phi0)
        .def_readonly("mode_a", &FactorizationResult::mode_a)
        .def_readonly("mode_b", &FactorizationResult::mode_b)
        .def_readonly("commutator", &FactorizationResult::commutator)
        .def_readonly("norm_n", &FactorizationResult::norm_n);

    py::class_<SchmidtDecomposition>(m, "SchmidtDecomposition")
        .def_readonly("lambda_plus", &SchmidtDecomposition::lambda_plus)
        .def_readonly("lambda_minus", &SchmidtDecomposition::lambda_minus)
        .def_readonly("mode_plus", &SchmidtDecomposition::mode_plus)
        .def_readonly("mode_minus", &SchmidtDecomposition::mode_minus)
        .def_readonly("phi", &SchmidtDecomposition::phi)
        .def_readonly("basis_free", &SchmidtDecomposition::basis_free);

    py::class_<SphereFrame>(m, "SphereFrame")
        .def_readonly("rotation", &SphereFrame::rotation)
        .def_readonly("degenerate", &SphereFrame::degenerate)
        .def("apply", &SphereFrame::apply);

    py::class_<BisectorReport>(m, "BisectorReport")
        .def_readonly("theta_ab", &BisectorReport::theta_ab)
        .def_readonly("coefficient", &BisectorReport::coefficient)
        .def_readonly("residual_bisector", &BisectorReport::residual_bisector)
        .def_readonly("residual_norm", &BisectorReport::residual_norm)
        .def_readonly("degenerate", &BisectorReport::degenerate);

    py::enum_<WaveplateKind>(m, "WaveplateKind")
        .value("quarter", WaveplateKind::quarter)
        .value("half", WaveplateKind::half);

    py::class_<WaveplateSetting>(m, "WaveplateSetting")
        .def(py::init<WaveplateKind, double>(), py::arg("kind"), py::arg("axis_angle"))
        .def_readonly("kind", &WaveplateSetting::kind)
        .def_readonly("axis_angle", &WaveplateSetting::axis_angle);

    py::class_<PlatePair>(m, "PlatePair")
        .def_readonly("quarter", &PlatePair::quarter)
        .def_readonly("half", &PlatePair::half)
        .def_readonly("degenerate", &PlatePair::degenerate);

    py::class_<DetectorModel>(m, "DetectorModel")
        .def(py::init<double, double, double>(), py::arg("eta1") = 1.0,
             py::arg("eta2") = 1.0, py::arg("dark_rate") = 0.0)
        .def_readonly("eta1", &DetectorModel::eta1)
        .def_readonly("eta2", &DetectorModel::eta2)
        .def_readonly("dark_rate", &DetectorModel::dark_rate);

    py::class_<CoincidenceRecord>(m, "CoincidenceRecord")
        .def(py::init<double, double, double, std::int64_t>(), py::arg("r0"),
             py::arg("r90"), py::arg("r45"), py::arg("n_pairs"))
        .def_readonly("r0", &CoincidenceRecord::r0)
        .def_readonly("r90", &CoincidenceRecord::r90)
        .def_readonly("r45", &CoincidenceRecord::r45)
        .def_readonly("n_pairs", &CoincidenceRecord::n_pairs);

    py::class_<PhasePlate>(m, "PhasePlate")
        .def(py::init<double, double, double>(), py::arg("delta_n"), py::arg("length_l"),
             py::arg("tilt_delta") = 0.0)
        .def_readonly("delta_n", &PhasePlate::delta_n)
        .def_readonly("length_l", &PhasePlate::length_l)
        .def_readonly("tilt_delta", &PhasePlate::tilt_delta);

    py::class_<EstimationResult>(m, "EstimationResult")
        .def_readonly("lambda_plus", &EstimationResult::lambda_plus)
        .def_readonly("lambda_minus", &EstimationResult::lambda_minus)
        .def_readonly("cos_2phi", &EstimationResult::cos_2phi)
        .def_readonly("phase_undefined", &EstimationResult::phase_undefined)
        .def_readonly("out_of_range", &EstimationResult::out_of_range);

    py::class_<TwoQubitState>(m, "TwoQubitState")
        .def_readonly("amp_hh", &TwoQubitState::amp_hh)
        .def_readonly("amp_vv", &TwoQubitState::amp_vv)
        .def("concurrence", &TwoQubitState::concurrence);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("phi", &SweepPoint::phi)
        .def_readonly("r0", &SweepPoint::r0)
        .def_readonly("r90", &SweepPoint::r90)
        .def_readonly("r45", &SweepPoint::r45);

    py::class_<SimulationOptions>(m, "SimulationOptions")
        .def(py::init<>())
        .def_readwrite("state", &SimulationOptions::state)
        .def_readwrite("detector", &SimulationOptions::detector)
        .def_readwrite("n_pairs", &SimulationOptions::n_pairs)
        .def_readwrite("seed", &SimulationOptions::seed)
        .def_readwrite("exact", &SimulationOptions::exact);

    py::class_<SimulationReport>(m, "SimulationReport")
        .def_readonly("input", &SimulationReport::input)
        .def_readonly("plates", &SimulationReport::plates)
        .def_readonly("aligned", &SimulationReport::aligned)
        .def_readonly("lambda_plus_true", &SimulationReport::lambda_plus_true)
        .def_readonly("lambda_minus_true", &SimulationReport::lambda_minus_true)
        .def_readonly("phi_true", &SimulationReport::phi_true)
        .def_readonly("n_pairs", &SimulationReport::n_pairs)
        .def_readonly("seed", &SimulationReport::seed)
        .def_readonly("exact", &SimulationReport::exact)
        .def_readonly("expected", &SimulationReport::expected)
        .def_readonly("expected_cross", &SimulationReport::expected_cross)
        .def_readonly("sampled", &SimulationReport::sampled)
        .def_readonly("sampled_cross", &SimulationReport::sampled_cross)
        .def_readonly("estimate", &SimulationReport::estimate)
        .def("to_json", [](const SimulationReport& rep) { return to_json(rep).dump(); });

    // construction and measures
    m.def("make_qutrit", &make_qutrit, py::arg("c1"), py::arg("c2"), py::arg("c3"));
    m.def("alpha_family_qutrit", &alpha_family_qutrit, py::arg("alpha"));
    m.def("concurrence", &concurrence);
    m.def("degree_of_polarization", &degree_of_polarization);
    m.def("schmidt_eigenvalues", [](const QutritState& q) {
        const auto [p, mn] = schmidt_eigenvalues(q);
        return py::make_tuple(p, mn);
    });
    m.def("schmidt_k_and_entropy", [](const QutritState& q) {
        const auto [k, s] = schmidt_k_and_entropy(q);
        return py::make_tuple(k, s);
    });
    m.def("stokes_vector", &stokes_vector);

    // factorization and Schmidt modes
    m.def("factorize", &factorize);
    m.def("schmidt_decomposition", &schmidt_decomposition);
    m.def("concurrence_from_commutator", &concurrence_from_commutator);

    // sphere geometry
    m.def("stokes_of_jones", &stokes_of_jones, py::arg("jones"),
          py::arg("tol") = Tolerances{});
    m.def("angle_between", &angle_between);
    m.def("concurrence_from_angle", &concurrence_from_angle);
    m.def("polarization_from_angle", &polarization_from_angle);
    m.def("biphoton_stokes_composition", &biphoton_stokes_composition,
          py::arg("lambda_plus"), py::arg("lambda_minus"), py::arg("s_plus"),
          py::arg("s_minus"), py::arg("tol") = Tolerances{});
    m.def("bisector_check", &bisector_check, py::arg("state"),
          py::arg("tol") = Tolerances{});
    m.def("schmidt_frame", &schmidt_frame, py::arg("state"), py::arg("tol") = Tolerances{});
    m.def("sphere_scene_json",
          [](const QutritState& q, const std::string& frame) {
              const SceneFrame f =
                  (frame == "schmidt") ? SceneFrame::schmidt : SceneFrame::lab;
              return to_json(sphere_scene(q, f)).dump();
          },
          py::arg("state"), py::arg("frame") = "lab");
    m.def("sphere_scene_csv",
          [](const QutritState& q, const std::string& frame) {
              const SceneFrame f =
                  (frame == "schmidt") ? SceneFrame::schmidt : SceneFrame::lab;
              return scene_to_csv(sphere_scene(q, f));
          },
          py::arg("state"), py::arg("frame") = "lab");

    // experiment simulation
    m.def("jones_of_waveplate", &jones_of_waveplate);
    m.def("composite_jones", &composite_jones);
    m.def("transform_qutrit", &transform_qutrit, py::arg("state"), py::arg("unitary"),
          py::arg("tol") = Tolerances{});
    m.def("schmidt_aligning_plates", &schmidt_aligning_plates);
    m.def("expected_rates", &expected_rates, py::arg("aligned"), py::arg("detector"),
          py::arg("n_pairs"), py::arg("tol") = Tolerances{});
    m.def("sample_counts", &sample_counts, py::arg("expected"), py::arg("seed"));
    m.def("estimate_parameters", &estimate_parameters);
    m.def("phase_plate_delay", &phase_plate_delay);
    m.def("apply_phase_delay", &apply_phase_delay, py::arg("aligned"),
          py::arg("delta_phi"), py::arg("tol") = Tolerances{});
    m.def("postselect_split", &postselect_split, py::arg("aligned"),
          py::arg("tol") = Tolerances{});
    m.def("phi_sweep", &phi_sweep, py::arg("aligned"), py::arg("detector"),
          py::arg("n_pairs"), py::arg("steps"), py::arg("tol") = Tolerances{});
    m.def("r45_visibility", &r45_visibility);
    m.def("run_simulation", &run_simulation, py::arg("options"),
          py::arg("tol") = Tolerances{});

    // reports
    m.def("analysis_report_json",
          [](const QutritState& q, double eps) { return analysis_report(q, eps).dump(); },
          py::arg("state"), py::arg("epsilon_rec") = Tolerances{}.reconstruction);

    py::register_exception<AllZeroError>(m, "AllZeroError", PyExc_ValueError);
    py::register_exception<NonFiniteError>(m, "NonFiniteError", PyExc_ValueError);
    py::register_exception<NotAlignedError>(m, "NotAlignedError", PyExc_ValueError);
    py::register_exception<NoCountsError>(m, "NoCountsError", PyExc_ValueError);
}
