#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvring/fourier.hpp"
#include "cvring/gaussian.hpp"
#include "cvring/model.hpp"
#include "cvring/propagate.hpp"
#include "cvring/witness.hpp"

namespace py = pybind11;
using namespace cvring;

namespace {

Route route_from(const std::string& name) {
  if (name == "auto") return Route::kAuto;
  if (name == "analytic") return Route::kAnalytic;
  if (name == "numerical") return Route::kNumerical;
  throw std::invalid_argument("route must be auto, analytic or numerical, got '" + name + "'");
}

CovarianceMatrix individual(const Eigen::MatrixXd& v) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0) {
    throw std::invalid_argument("covariance must be square with even dimension");
  }
  return CovarianceMatrix{v, Basis::kIndividual, 0.0};
}

}  // namespace

PYBIND11_MODULE(_cvring, m) {
  m.doc() = "Gaussian states of circular chi(2) waveguide arrays";

  py::class_<ArrayConfig>(m, "ArrayConfig")
      .def(py::init([](int n_modes, double coupling, double eta_mag, py::object pump,
                       double z_max, int z_steps, double transmittance) {
             ArrayConfig c;
             c.n_modes = n_modes;
             c.coupling = coupling;
             c.eta_mag = eta_mag;
             c.z_max = z_max;
             c.z_steps = z_steps;
             c.transmittance = transmittance;
             if (py::isinstance<py::str>(pump)) {
               c.pump = parse_profile(pump.cast<std::string>());
             } else {
               c.pump = CustomPhases{pump.cast<std::vector<double>>()};
             }
             return c;
           }),
           py::arg("n_modes") = 8, py::arg("coupling") = 0.45, py::arg("eta_mag") = 0.015,
           py::arg("pump") = py::str("r0"), py::arg("z_max") = 20.0, py::arg("z_steps") = 400,
           py::arg("transmittance") = 1.0)
      .def_readwrite("n_modes", &ArrayConfig::n_modes)
      .def_readwrite("coupling", &ArrayConfig::coupling)
      .def_readwrite("eta_mag", &ArrayConfig::eta_mag)
      .def_readwrite("z_max", &ArrayConfig::z_max)
      .def_readwrite("z_steps", &ArrayConfig::z_steps)
      .def_readwrite("transmittance", &ArrayConfig::transmittance)
      .def_readwrite("edge_couplings", &ArrayConfig::edge_couplings)
      .def_property_readonly("profile", [](const ArrayConfig& c) { return profile_label(c.pump); })
      .def("__repr__", [](const ArrayConfig& c) {
        return "ArrayConfig(n_modes=" + std::to_string(c.n_modes) +
               ", coupling=" + std::to_string(c.coupling) +
               ", eta_mag=" + std::to_string(c.eta_mag) + ", pump='" + profile_label(c.pump) +
               "')";
      });

  m.def("validate", [](const ArrayConfig& c, bool zero_mode_claims) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& d : validate_config(c, zero_mode_claims)) {
      out.emplace_back(d.severity == Diagnostic::Severity::kError ? "error" : "warning", d.message);
    }
    return out;
  }, py::arg("config"), py::arg("zero_mode_claims") = false);

  m.def("dft_matrix", [](int n) { return dft_matrix(n).matrix(); }, py::arg("n_modes"));
  m.def("eigenvalues", [](int n, double j) { return eigenvalues(n, j).values; },
        py::arg("n_modes"), py::arg("coupling"));
  m.def("orthonormality_residual", py::overload_cast<int, long>(&orthonormality_residual),
        py::arg("n_modes"), py::arg("shift"));
  m.def("z_grid", &z_grid, py::arg("config"));
  m.def("drift_matrix", &build_drift_matrix, py::arg("config"));

  m.def("propagator", [](const ArrayConfig& c, double z, const std::string& route) {
    return propagate(c, z, route_from(route)).matrix;
  }, py::arg("config"), py::arg("z"), py::arg("route") = "auto");
  m.def("closed_form_covariance", [](const ArrayConfig& c, double z) {
    return closed_form_covariance(c, z).matrix;
  }, py::arg("config"), py::arg("z"));
  m.def("propagated_covariance", [](const ArrayConfig& c, double z, const std::string& route) {
    return propagated_covariance(c, z, route_from(route)).matrix;
  }, py::arg("config"), py::arg("z"), py::arg("route") = "auto");
  m.def("apply_loss", [](const Eigen::MatrixXd& v, double t) {
    return apply_loss(individual(v), t).matrix;
  }, py::arg("covariance"), py::arg("transmittance"));
  m.def("min_physical_eigenvalue", &min_physical_eigenvalue, py::arg("covariance"));
  m.def("determinant", &gaussian_determinant, py::arg("covariance"));

  m.def("vlf_pair", [](const Eigen::MatrixXd& v, int a, int b, double ta, double tb) {
    return vlf_pair(individual(v), a, b, ta, tb);
  }, py::arg("covariance"), py::arg("a"), py::arg("b"), py::arg("theta_a") = 0.0,
     py::arg("theta_b") = 1.5707963267948966);
  m.def("full_inseparability", [](const Eigen::MatrixXd& v, std::vector<int> modes,
                                  std::vector<double> angles) {
    const VlfReport r = full_inseparability_check(individual(v), modes, angles);
    py::list pairs;
    for (const auto& p : r.pairs) {
      pairs.append(py::make_tuple(p.mode_a, p.mode_b, p.theta_a, p.theta_b, p.value));
    }
    py::dict out;
    out["pairs"] = pairs;
    out["fully_inseparable"] = r.fully_inseparable;
    out["pure_state"] = r.pure_state;
    return out;
  }, py::arg("covariance"), py::arg("modes"), py::arg("angles") = std::vector<double>{});
  m.def("angle_scan", [](const Eigen::MatrixXd& v, int a, int b, int grid) {
    const AngleScanResult r = angle_scan(individual(v), a, b, grid);
    return py::make_tuple(r.theta_a, r.theta_b, r.value);
  }, py::arg("covariance"), py::arg("a"), py::arg("b"), py::arg("grid_size") = 64);

  m.attr("VLF_THRESHOLD") = kVlfThreshold;
}
