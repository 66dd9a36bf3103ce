#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dephasim/bath.hpp"
#include "dephasim/dynamics.hpp"
#include "dephasim/errors.hpp"
#include "dephasim/measures.hpp"
#include "dephasim/oracle.hpp"

namespace py = pybind11;
using namespace dephasim;

PYBIND11_MODULE(_dephasim, m) {
  m.doc() =
      "Exact reduced dynamics of N dephasing two-level systems in a common "
      "bosonic environment, with BLP and relative-entropy non-Markovianity "
      "measures";

  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_ArithmeticError);

  m.attr("INFINITE_BETA") = bath::kInfiniteBeta;

  py::class_<bath::SpectralParams>(m, "SpectralParams")
      .def(py::init([](double G, double s, double omega_c, double beta) {
             bath::SpectralParams p{G, s, omega_c, beta};
             p.validate();
             return p;
           }),
           py::arg("G") = 1.0, py::arg("s") = 1.0, py::arg("omega_c") = 3.0,
           py::arg("beta") = bath::kInfiniteBeta)
      .def_readwrite("G", &bath::SpectralParams::coupling)
      .def_readwrite("s", &bath::SpectralParams::ohmicity)
      .def_readwrite("omega_c", &bath::SpectralParams::cutoff)
      .def_readwrite("beta", &bath::SpectralParams::inverse_temperature)
      .def("zero_temperature", &bath::SpectralParams::zero_temperature)
      .def("__repr__", [](const bath::SpectralParams& p) {
        return "SpectralParams(G=" + std::to_string(p.coupling) +
               ", s=" + std::to_string(p.ohmicity) +
               ", omega_c=" + std::to_string(p.cutoff) + ")";
      });

  py::class_<bath::KernelValues>(m, "KernelValues")
      .def_readonly("gamma", &bath::KernelValues::gamma)
      .def_readonly("delta", &bath::KernelValues::delta)
      .def_readonly("gamma_rate", &bath::KernelValues::gamma_rate)
      .def_readonly("delta_rate", &bath::KernelValues::delta_rate);

  py::class_<bath::LongTimeLimits>(m, "LongTimeLimits")
      .def_readonly("gamma_limit", &bath::LongTimeLimits::gamma_limit)
      .def_readonly("delta_slope", &bath::LongTimeLimits::delta_slope)
      .def_readonly("delta_offset", &bath::LongTimeLimits::delta_offset);

  m.def("spectral_density", &bath::spectral_density, py::arg("params"),
        py::arg("omega"));
  m.def("gamma_exact", &bath::gamma_exact, py::arg("params"), py::arg("t"));
  m.def("delta_exact", &bath::delta_exact, py::arg("params"), py::arg("t"));
  m.def("kernel_rates", &bath::kernel_rates, py::arg("params"), py::arg("t"));
  m.def("kernel_quadrature", &bath::kernel_quadrature, py::arg("params"),
        py::arg("t"));
  m.def("long_time_limits", &bath::long_time_limits, py::arg("params"));

  py::enum_<dynamics::Variant>(m, "Variant")
      .value("PAPER", dynamics::Variant::Paper)
      .value("PAIRWISE", dynamics::Variant::Pairwise);

  py::class_<dynamics::ModelConfig>(m, "ModelConfig")
      .def(py::init([](int N, double omega0, dynamics::Variant variant,
                       double T) {
             dynamics::ModelConfig mc{N, omega0, variant, T};
             mc.validate();
             return mc;
           }),
           py::arg("N") = 2, py::arg("omega0") = 1.0,
           py::arg("variant") = dynamics::Variant::Paper, py::arg("T") = 20.0)
      .def_readwrite("N", &dynamics::ModelConfig::qubit_count)
      .def_readwrite("omega0", &dynamics::ModelConfig::splitting)
      .def_readwrite("variant", &dynamics::ModelConfig::variant)
      .def_readwrite("T", &dynamics::ModelConfig::horizon);

  py::class_<dynamics::CoherenceFactors>(m, "CoherenceFactors")
      .def_readonly("f", &dynamics::CoherenceFactors::f)
      .def_readonly("g", &dynamics::CoherenceFactors::g)
      .def_readonly("chi", &dynamics::CoherenceFactors::chi)
      .def_readonly("alpha_offdiag",
                    &dynamics::CoherenceFactors::alpha_offdiag);

  py::class_<dynamics::BasisString>(m, "BasisString")
      .def(py::init<std::vector<int>>(), py::arg("entries"))
      .def_property_readonly("sum", &dynamics::BasisString::sum)
      .def_property_readonly("product", &dynamics::BasisString::product)
      .def_property_readonly("pair_sum", &dynamics::BasisString::pair_sum)
      .def_property_readonly("entries", &dynamics::BasisString::entries);

  py::class_<dynamics::MeasureRates>(m, "MeasureRates")
      .def_readonly("dD_dt", &dynamics::MeasureRates::dD_dt)
      .def_readonly("dS_dt", &dynamics::MeasureRates::dS_dt)
      .def_readonly("dD_dt_left", &dynamics::MeasureRates::dD_dt_left)
      .def_readonly("dS_dt_left", &dynamics::MeasureRates::dS_dt_left)
      .def_readonly("at_kink", &dynamics::MeasureRates::at_kink);

  m.def("coherence_factors", &dynamics::coherence_factors, py::arg("model"),
        py::arg("params"), py::arg("t"));
  m.def("reduced_pair", &dynamics::reduced_pair, py::arg("model"),
        py::arg("params"), py::arg("t"));
  m.def("n_qubit_element", &dynamics::n_qubit_element, py::arg("model"),
        py::arg("params"), py::arg("t"), py::arg("bra"), py::arg("ket"));
  m.def("trace_distance", &dynamics::trace_distance, py::arg("model"),
        py::arg("params"), py::arg("t"));
  m.def("relative_entropy", &dynamics::relative_entropy,
        py::arg("trace_distance"));
  m.def("rates", &dynamics::rates, py::arg("model"), py::arg("params"),
        py::arg("t"));

  py::class_<measures::MonotoneInterval>(m, "MonotoneInterval")
      .def_readonly("t_start", &measures::MonotoneInterval::t_start)
      .def_readonly("t_end", &measures::MonotoneInterval::t_end)
      .def_readonly("D_start", &measures::MonotoneInterval::D_start)
      .def_readonly("D_end", &measures::MonotoneInterval::D_end)
      .def_readonly("S_start", &measures::MonotoneInterval::S_start)
      .def_readonly("S_end", &measures::MonotoneInterval::S_end)
      .def_readonly("kink_start", &measures::MonotoneInterval::kink_start);

  py::class_<measures::MeasureResult>(m, "MeasureResult")
      .def_readonly("blp", &measures::MeasureResult::blp)
      .def_readonly("entropy", &measures::MeasureResult::entropy)
      .def_readonly("intervals", &measures::MeasureResult::intervals)
      .def_readonly("horizon", &measures::MeasureResult::horizon)
      .def_readonly("grid_points", &measures::MeasureResult::grid_points)
      .def_readonly("refinement_tol", &measures::MeasureResult::refinement_tol);

  py::enum_<measures::SweepAxis>(m, "SweepAxis")
      .value("OHMICITY", measures::SweepAxis::Ohmicity)
      .value("COUPLING", measures::SweepAxis::Coupling)
      .value("CUTOFF", measures::SweepAxis::Cutoff)
      .value("HORIZON", measures::SweepAxis::Horizon)
      .value("QUBIT_COUNT", measures::SweepAxis::QubitCount);

  py::class_<measures::SweepRow>(m, "SweepRow")
      .def_readonly("value", &measures::SweepRow::value)
      .def_readonly("blp", &measures::SweepRow::blp)
      .def_readonly("entropy", &measures::SweepRow::entropy)
      .def_readonly("interval_count", &measures::SweepRow::interval_count)
      .def_readonly("error", &measures::SweepRow::error);

  m.def("find_increase_intervals", &measures::find_increase_intervals,
        py::arg("model"), py::arg("params"),
        py::arg("grid_points") = measures::kDefaultGridPoints,
        py::arg("tol") = 2e-8);
  m.def("blp_measure", &measures::blp_measure, py::arg("model"),
        py::arg("params"), py::arg("grid_points") = measures::kDefaultGridPoints,
        py::arg("tol") = 2e-8, py::call_guard<py::gil_scoped_release>());
  m.def("entropy_measure", &measures::entropy_measure, py::arg("model"),
        py::arg("params"), py::arg("grid_points") = measures::kDefaultGridPoints,
        py::arg("tol") = 2e-8, py::call_guard<py::gil_scoped_release>());
  m.def(
      "sweep",
      [](measures::SweepAxis axis, const std::vector<double>& values,
         const dynamics::ModelConfig& model, const bath::SpectralParams& p,
         int grid_points, double tol, int jobs) {
        measures::SweepSpec spec;
        spec.axis = axis;
        spec.values = values;
        spec.model = model;
        spec.bath = p;
        return measures::sweep(spec, grid_points, tol, jobs);
      },
      py::arg("axis"), py::arg("values"), py::arg("model"), py::arg("params"),
      py::arg("grid_points") = measures::kDefaultGridPoints,
      py::arg("tol") = 2e-8, py::arg("jobs") = 1,
      py::call_guard<py::gil_scoped_release>());

  py::class_<oracle::Mode>(m, "Mode")
      .def(py::init([](double omega, std::complex<double> coupling) {
             return oracle::Mode{omega, coupling};
           }),
           py::arg("omega"), py::arg("coupling"))
      .def_readwrite("omega", &oracle::Mode::omega)
      .def_readwrite("coupling", &oracle::Mode::coupling);

  py::class_<oracle::DiscreteBath>(m, "DiscreteBath")
      .def(py::init<>())
      .def_readwrite("modes", &oracle::DiscreteBath::modes)
      .def_readwrite("fock_dims", &oracle::DiscreteBath::fock_dims)
      .def("validate", &oracle::DiscreteBath::validate)
      .def("full_dimension", &oracle::DiscreteBath::full_dimension,
           py::arg("qubit_count"));

  py::class_<oracle::ExactOptions>(m, "ExactOptions")
      .def(py::init<>())
      .def_readwrite("splitting", &oracle::ExactOptions::splitting)
      .def_readwrite("max_leakage", &oracle::ExactOptions::max_leakage);

  py::class_<oracle::ExactResult>(m, "ExactResult")
      .def_readonly("reduced", &oracle::ExactResult::reduced)
      .def_readonly("norm_error", &oracle::ExactResult::norm_error)
      .def_readonly("truncation_leakage",
                    &oracle::ExactResult::truncation_leakage);

  py::class_<oracle::ArbitrationRow>(m, "ArbitrationRow")
      .def_readonly("t", &oracle::ArbitrationRow::t)
      .def_readonly("eta_exact", &oracle::ArbitrationRow::eta_exact)
      .def_readonly("eta_paper", &oracle::ArbitrationRow::eta_paper)
      .def_readonly("eta_pairwise", &oracle::ArbitrationRow::eta_pairwise)
      .def_readonly("dev_paper", &oracle::ArbitrationRow::dev_paper)
      .def_readonly("dev_pairwise", &oracle::ArbitrationRow::dev_pairwise)
      .def_readonly("gamma_discrete", &oracle::ArbitrationRow::gamma_discrete)
      .def_readonly("delta_discrete", &oracle::ArbitrationRow::delta_discrete)
      .def_readonly("norm_error", &oracle::ArbitrationRow::norm_error)
      .def_readonly("truncation_leakage",
                    &oracle::ArbitrationRow::truncation_leakage);

  py::class_<oracle::ArbitrationReport>(m, "ArbitrationReport")
      .def_readonly("qubit_count", &oracle::ArbitrationReport::qubit_count)
      .def_readonly("rows", &oracle::ArbitrationReport::rows);

  m.def("discretize", &oracle::discretize, py::arg("params"),
        py::arg("mode_count"), py::arg("omega_max"));
  m.def("assign_fock_dims", &oracle::assign_fock_dims, py::arg("bath"),
        py::arg("qubit_count"), py::arg("tail_bound") = 1e-12);
  m.def("truncation_leakage_bound", &oracle::truncation_leakage_bound,
        py::arg("bath"), py::arg("qubit_count"));
  m.def("discrete_kernels", &oracle::discrete_kernels, py::arg("bath"),
        py::arg("t"));
  m.def("exact_reduced_state", &oracle::exact_reduced_state,
        py::arg("qubit_count"), py::arg("bath"), py::arg("t"),
        py::arg("initial_sign") = 1,
        py::arg("options") = oracle::ExactOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("arbitrate_variants", &oracle::arbitrate_variants,
        py::arg("qubit_count"), py::arg("bath"), py::arg("times"),
        py::arg("options") = oracle::ExactOptions{},
        py::call_guard<py::gil_scoped_release>());

#ifdef DEPHASIM_VERSION
  m.attr("__version__") = DEPHASIM_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
