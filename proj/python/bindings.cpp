#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nch/config.hpp"
#include "nch/convergence.hpp"
#include "nch/diagnostics.hpp"
#include "nch/errors.hpp"
#include "nch/mesh.hpp"
#include "nch/scheme.hpp"
#include "nch/simulation.hpp"
#include "nch/thermo.hpp"

namespace py = pybind11;
using namespace nch;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  return {a.data(), a.data() + a.size()};
}

py::tuple csr_arrays(const SparseMatrix& a) {
  return py::make_tuple(py::array_t<int>(a.row_offsets().size(), a.row_offsets().data()),
                        py::array_t<int>(a.col_indices().size(), a.col_indices().data()), to_array(a.values()),
                        py::make_tuple(a.rows(), a.cols()));
}

}  // namespace

PYBIND11_MODULE(_nchsim, m) {
  m.doc() = "Structure-preserving P1 solver for the non-isothermal Cahn-Hilliard system";
  m.attr("__version__") = "0.1.0";

  py::register_exception<NonpositiveTemperature>(m, "NonpositiveTemperature", PyExc_ArithmeticError);
  py::register_exception<NewtonDiverged>(m, "NewtonDiverged", PyExc_RuntimeError);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", PyExc_RuntimeError);
  py::register_exception<SimulationFailed>(m, "SimulationFailed", PyExc_RuntimeError);

  py::class_<Mesh>(m, "Mesh")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("n", &Mesh::n)
      .def_property_readonly("h", &Mesh::h)
      .def_property_readonly("num_nodes", &Mesh::num_nodes)
      .def_property_readonly("num_elements", &Mesh::num_elements)
      .def_property_readonly("num_edges", &Mesh::num_edges)
      .def_property_readonly("nodes", &Mesh::nodes)
      .def_property_readonly("elements", &Mesh::elements)
      .def("node_index", &Mesh::node_index, py::arg("i"), py::arg("j"));

  m.def(
      "prolong_nodal",
      [](const Mesh& coarse, const Mesh& fine, const py::array_t<double, py::array::c_style | py::array::forcecast>& u) {
        return to_array(prolong_nodal(coarse, fine, to_vector(u)));
      },
      py::arg("coarse"), py::arg("fine"), py::arg("u"));

  py::class_<PotentialParams>(m, "PotentialParams")
      .def(py::init<>())
      .def_readwrite("a", &PotentialParams::a)
      .def_readwrite("b", &PotentialParams::b)
      .def_readwrite("d", &PotentialParams::d)
      .def_readwrite("theta_c", &PotentialParams::theta_c)
      .def_readwrite("gamma", &PotentialParams::gamma);

  py::class_<OnsagerCoeffs>(m, "OnsagerCoeffs")
      .def(py::init<>())
      .def(py::init([](double M, double K, double C) { return OnsagerCoeffs{M, K, C}; }), py::arg("M"), py::arg("K"),
           py::arg("C"))
      .def_readwrite("M", &OnsagerCoeffs::M)
      .def_readwrite("K", &OnsagerCoeffs::K)
      .def_readwrite("C", &OnsagerCoeffs::C);

  py::module_ th = m.def_submodule("thermo", "Driving potential and thermodynamic densities");
  th.def("f", &thermo::f_value, py::arg("phi"), py::arg("theta"), py::arg("p") = PotentialParams{});
  th.def("df_dphi", &thermo::df_dphi, py::arg("phi"), py::arg("theta"), py::arg("p") = PotentialParams{});
  th.def("df_dtheta", &thermo::df_dtheta, py::arg("phi"), py::arg("theta"), py::arg("p") = PotentialParams{});
  th.def("d2f_dtheta2", &thermo::d2f_dtheta2, py::arg("phi"), py::arg("theta"), py::arg("p") = PotentialParams{});
  th.def("f_vex", &thermo::f_vex, py::arg("phi"), py::arg("theta"), py::arg("p") = PotentialParams{});
  th.def("f_cav", &thermo::f_cav, py::arg("phi"), py::arg("theta"), py::arg("p") = PotentialParams{});
  th.def("entropy_density", &thermo::entropy_density, py::arg("phi"), py::arg("grad_phi"), py::arg("theta"),
         py::arg("p") = PotentialParams{});
  th.def("internal_energy_density", &thermo::internal_energy_density, py::arg("phi"), py::arg("theta"),
         py::arg("p") = PotentialParams{});
  th.def("validate_onsager", &thermo::validate_onsager, py::arg("c"));

  py::class_<State>(m, "State")
      .def(py::init<>())
      .def_property(
          "phi", [](const State& s) { return to_array(s.phi); },
          [](State& s, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) { s.phi = to_vector(a); })
      .def_property(
          "mu", [](const State& s) { return to_array(s.mu); },
          [](State& s, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) { s.mu = to_vector(a); })
      .def_property(
          "theta", [](const State& s) { return to_array(s.theta); },
          [](State& s, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
            s.theta = to_vector(a);
          })
      .def_readwrite("time", &State::time);

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def(py::init<>())
      .def_readwrite("tau", &SchemeConfig::tau)
      .def_readwrite("newton_tol", &SchemeConfig::newton_tol)
      .def_readwrite("newton_max_iter", &SchemeConfig::newton_max_iter)
      .def_readwrite("potential", &SchemeConfig::potential)
      .def_readwrite("onsager", &SchemeConfig::onsager);

  py::class_<StepStats>(m, "StepStats")
      .def_readonly("newton_iterations", &StepStats::newton_iterations)
      .def_readonly("final_residual_norm", &StepStats::final_residual_norm)
      .def_readonly("theta_min", &StepStats::theta_min)
      .def_readonly("theta_max", &StepStats::theta_max)
      .def_readonly("residual_history", &StepStats::residual_history);

  m.def(
      "residual",
      [](const Mesh& mesh, const State& x_new, const State& x_old, const SchemeConfig& cfg) {
        return to_array(residual(mesh, x_new, x_old, cfg));
      },
      py::arg("mesh"), py::arg("x_new"), py::arg("x_old"), py::arg("cfg"));
  m.def(
      "jacobian",
      [](const Mesh& mesh, const State& x_new, const State& x_old, const SchemeConfig& cfg) {
        return csr_arrays(jacobian(mesh, x_new, x_old, cfg));
      },
      py::arg("mesh"), py::arg("x_new"), py::arg("x_old"), py::arg("cfg"),
      "Returns (indptr, indices, data, shape) in CSR layout.");
  m.def(
      "solve_timestep",
      [](const Mesh& mesh, const State& x_old, const SchemeConfig& cfg) {
        StepResult r = solve_timestep(mesh, x_old, cfg);
        return py::make_tuple(r.state, r.stats);
      },
      py::arg("mesh"), py::arg("x_old"), py::arg("cfg"));

  m.def(
      "initial_state",
      [](const Mesh& mesh, const SchemeConfig& cfg, const std::string& kind, const Vec2& center) {
        InitialData d;
        if (kind == "convergence") d.kind = InitialData::Kind::kConvergence;
        else if (kind == "illustration") d.kind = InitialData::Kind::kIllustration;
        else throw std::invalid_argument("kind must be 'convergence' or 'illustration'");
        d.center = center;
        return initial_state(mesh, cfg, d);
      },
      py::arg("mesh"), py::arg("cfg"), py::arg("kind") = "convergence", py::arg("center") = Vec2{0.0, 0.0});

  m.def("total_mass", [](const Mesh& mesh, const SchemeConfig& cfg, const State& s) {
    return total_mass(mesh, cfg.quad, s);
  }, py::arg("mesh"), py::arg("cfg"), py::arg("state"));
  m.def("total_entropy", [](const Mesh& mesh, const SchemeConfig& cfg, const State& s) {
    return total_entropy(mesh, cfg.quad, s, cfg.potential);
  }, py::arg("mesh"), py::arg("cfg"), py::arg("state"));
  m.def("total_internal_energy", [](const Mesh& mesh, const SchemeConfig& cfg, const State& s) {
    return total_internal_energy(mesh, cfg.quad, s, cfg.potential);
  }, py::arg("mesh"), py::arg("cfg"), py::arg("state"));
  m.def("entropy_production", [](const Mesh& mesh, const SchemeConfig& cfg, const State& x_new, const State& x_old) {
    return entropy_production(mesh, cfg.quad, x_new, x_old, cfg.onsager);
  }, py::arg("mesh"), py::arg("cfg"), py::arg("x_new"), py::arg("x_old"));

  py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord")
      .def_readonly("step", &DiagnosticsRecord::step)
      .def_readonly("time", &DiagnosticsRecord::time)
      .def_readonly("mass", &DiagnosticsRecord::mass)
      .def_readonly("energy", &DiagnosticsRecord::energy)
      .def_readonly("entropy", &DiagnosticsRecord::entropy)
      .def_readonly("production", &DiagnosticsRecord::production)
      .def_readonly("energy_increment", &DiagnosticsRecord::energy_increment)
      .def_readonly("theta_min", &DiagnosticsRecord::theta_min)
      .def_readonly("theta_max", &DiagnosticsRecord::theta_max)
      .def_readonly("newton_iterations", &DiagnosticsRecord::newton_iterations)
      .def_readonly("final_residual", &DiagnosticsRecord::final_residual);

  py::class_<RunConfig>(m, "RunConfig")
      .def_static("from_json", &parse_run_config, py::arg("text"))
      .def_static("load", &load_run_config, py::arg("path"))
      .def("to_json", [](const RunConfig& c) { return to_json(c); })
      .def("num_steps", &RunConfig::num_steps)
      .def("scheme", &RunConfig::scheme)
      .def_readwrite("mesh_n", &RunConfig::mesh_n)
      .def_readwrite("tau", &RunConfig::tau)
      .def_readwrite("t_final", &RunConfig::t_final)
      .def_readwrite("potential", &RunConfig::potential)
      .def_readwrite("onsager", &RunConfig::onsager);

  m.def(
      "run_simulation",
      [](const RunConfig& cfg) {
        SimulationResult r;
        {
          py::gil_scoped_release release;
          r = run_simulation(cfg);
        }
        return py::make_tuple(r.final_state, r.records);
      },
      py::arg("cfg"));

  py::class_<ConvergenceRow>(m, "ConvergenceRow")
      .def_readonly("level", &ConvergenceRow::level)
      .def_readonly("err_grad_phi", &ConvergenceRow::err_grad_phi)
      .def_readonly("err_grad_mu", &ConvergenceRow::err_grad_mu)
      .def_readonly("err_theta", &ConvergenceRow::err_theta)
      .def_readonly("err_grad_theta", &ConvergenceRow::err_grad_theta)
      .def_readonly("eoc_grad_phi", &ConvergenceRow::eoc_grad_phi)
      .def_readonly("eoc_grad_mu", &ConvergenceRow::eoc_grad_mu)
      .def_readonly("eoc_theta", &ConvergenceRow::eoc_theta)
      .def_readonly("eoc_grad_theta", &ConvergenceRow::eoc_grad_theta);
  py::class_<ConvergenceTable>(m, "ConvergenceTable")
      .def_readonly("kind", &ConvergenceTable::kind)
      .def_readonly("rows", &ConvergenceTable::rows)
      .def("__str__", [](const ConvergenceTable& t) { return format_table(t); })
      .def("to_json", [](const ConvergenceTable& t) { return table_to_json(t); });

  m.def("self_convergence_space", [](const RunConfig& c) { return self_convergence_space(c); }, py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());
  m.def("self_convergence_time", [](const RunConfig& c) { return self_convergence_time(c); }, py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());
  m.def("eoc", &eoc, py::arg("err_coarse"), py::arg("err_fine"));
}
