#include "lfamg/experiment.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

namespace py = pybind11;
using namespace lfamg;

namespace {

// Shared-ownership handle for matrix-free operators exposed to Python.
struct PyOperator {
  std::shared_ptr<const LinearOp> op;

  Index rows() const { return op->rows(); }
  Index cols() const { return op->cols(); }
  Vec apply(const Vec& x) const { return op->apply(x); }
  CVec apply_complex(const CVec& x) const { return op->apply_complex(x); }
  Mat materialize_(Index guard) const { return materialize(*op, guard); }
};

PyOperator wrap(std::unique_ptr<LinearOp> op) { return PyOperator{std::shared_ptr<const LinearOp>(std::move(op))}; }

GridSpec grid_from(int d, int n, const std::string& bc, int period) {
  if (bc == "periodic") return make_periodic_grid(d, n, period);
  return make_grid(d, n, boundary_kind_from_string(bc));
}

ExtensionKind kind_from(const std::string& name) {
  if (name == "odd") return ExtensionKind::Odd;
  if (name == "even") return ExtensionKind::Even;
  if (name == "mixed") return ExtensionKind::Mixed;
  throw std::invalid_argument("unknown extension kind '" + name + "' (odd, even, mixed)");
}

py::dict report_dict(const CompatReport& report) {
  py::dict out;
  out["pair"] = py::make_tuple(report.name_bc, report.name_periodic);
  out["operator_defect"] = report.operator_defect;
  out["range_defect"] = report.range_defect;
  out["tol"] = report.tol;
  out["verdict"] = report.verdict;
  out["probe"] = report.probe;
  if (report.counterexample)
    out["counterexample_basis_index"] = *report.counterexample;
  else
    out["counterexample_basis_index"] = py::none();
  return out;
}

}  // namespace

PYBIND11_MODULE(_lfamg, m) {
  m.doc() = "Geometric multigrid with machine-checked local Fourier analysis";

  py::class_<GridSpec>(m, "GridSpec")
      .def_readonly("d", &GridSpec::d)
      .def_readonly("n", &GridSpec::n)
      .def_readonly("period", &GridSpec::period)
      .def_property_readonly("bc", [](const GridSpec& g) { return std::string(to_string(g.bc)); })
      .def_property_readonly("h", &GridSpec::h)
      .def_property_readonly("points_per_dir", &GridSpec::points_per_dir)
      .def_property_readonly("total_points", &GridSpec::total_points)
      .def("__repr__", [](const GridSpec& g) {
        return "GridSpec(d=" + std::to_string(g.d) + ", n=" + std::to_string(g.n) + ", bc='" + to_string(g.bc) +
               "', period=" + std::to_string(g.period) + ")";
      });

  m.def("make_grid", &grid_from, py::arg("d"), py::arg("n"), py::arg("bc"), py::arg("period") = 2,
        "Uniform tensor-product grid; bc is one of dirichlet, neumann, mixed, periodic");
  m.def(
      "lex_index",
      [](const GridSpec& grid, const std::array<int, 3>& multi) { return lex_index(grid, multi); },
      py::arg("grid"), py::arg("multi"));
  m.def(
      "fourier_mode",
      [](const GridSpec& grid, const std::array<double, 3>& theta) { return fourier_mode(grid, theta).values; },
      py::arg("grid"), py::arg("theta"));

  py::class_<PyOperator>(m, "Operator")
      .def_property_readonly("rows", &PyOperator::rows)
      .def_property_readonly("cols", &PyOperator::cols)
      .def("apply", &PyOperator::apply, py::arg("x"))
      .def("apply_complex", &PyOperator::apply_complex, py::arg("x"))
      .def("materialize", &PyOperator::materialize_, py::arg("guard") = 10000);

  m.def(
      "make_operator",
      [](const GridSpec& grid, double c) {
        return PyOperator{std::make_shared<DiscreteOperator>(make_operator(grid, c))};
      },
      py::arg("grid"), py::arg("c"), "Matrix-free reaction-diffusion stencil operator on the grid");
  m.def(
      "operator_inverse",
      [](const GridSpec& grid, double c) {
        return PyOperator{std::make_shared<DenseSolveOp>(make_operator(grid, c))};
      },
      py::arg("grid"), py::arg("c"), "Dense-factorized inverse, for oracle-scale problems");

  py::class_<SmootherSpec>(m, "SmootherSpec")
      .def_static("jacobi", &SmootherSpec::jacobi, py::arg("omega"))
      .def_static("rbgs", &SmootherSpec::red_black_gs)
      .def_static("line_relaxation", &SmootherSpec::line_relaxation, py::arg("direction"))
      .def_static("polynomial", &SmootherSpec::polynomial, py::arg("coefficients"))
      .def_static("exact", &SmootherSpec::exact_solve)
      .def("__repr__", [](const SmootherSpec& s) { return "SmootherSpec(" + s.name() + ")"; });

  m.def(
      "smoother_step",
      [](const SmootherSpec& spec, const GridSpec& grid, double c, const Vec& u, const Vec& f) {
        return smoother_step(spec, make_operator(grid, c), u, f);
      },
      py::arg("spec"), py::arg("grid"), py::arg("c"), py::arg("u"), py::arg("f"));
  m.def(
      "smoother_iterator",
      [](const SmootherSpec& spec, const GridSpec& grid, double c, int steps) {
        return wrap(Smoother(spec, make_operator(grid, c)).iterator_op(steps));
      },
      py::arg("spec"), py::arg("grid"), py::arg("c"), py::arg("steps") = 1);
  m.def(
      "error_propagator",
      [](const SmootherSpec& spec, const GridSpec& grid, double c, int steps) {
        return wrap(error_propagator(spec, make_operator(grid, c), steps));
      },
      py::arg("spec"), py::arg("grid"), py::arg("c"), py::arg("steps") = 1);

  m.def(
      "full_weighting",
      [](const GridSpec& fine, std::optional<int> anchor) {
        return wrap(anchor ? full_weighting(fine, *anchor) : full_weighting(fine));
      },
      py::arg("fine"), py::arg("anchor") = py::none());
  m.def(
      "dlinear_interpolation",
      [](const GridSpec& fine, std::optional<int> anchor) {
        return wrap(anchor ? dlinear_interpolation(fine, *anchor) : dlinear_interpolation(fine));
      },
      py::arg("fine"), py::arg("anchor") = py::none());

  py::class_<ExtensionPair>(m, "ExtensionPair")
      .def(py::init([](const std::string& kind, int n, int d) { return ExtensionPair(kind_from(kind), n, d); }),
           py::arg("kind"), py::arg("n"), py::arg("d") = 1)
      .def_property_readonly("kind", [](const ExtensionPair& p) { return std::string(to_string(p.kind())); })
      .def_property_readonly("source_grid", &ExtensionPair::source_grid)
      .def_property_readonly("target_grid", &ExtensionPair::target_grid)
      .def("extend", &ExtensionPair::extend, py::arg("u"))
      .def("restrict", &ExtensionPair::restrict_, py::arg("v"))
      .def(
          "in_range",
          [](const ExtensionPair& pair, const Vec& v, double tol) { return in_range_of_extension(v, pair, tol); },
          py::arg("v"), py::arg("tol") = 1e-12);

  m.def(
      "extension_for",
      [](const std::string& bc, int n, int d) { return extension_for(boundary_kind_from_string(bc), n, d); },
      py::arg("bc"), py::arg("n"), py::arg("d") = 1);

  m.def(
      "check_lfa_compatible",
      [](const PyOperator& m_bc, const PyOperator& m_p, const ExtensionPair& source,
         std::optional<ExtensionPair> target, double tol, const std::string& name_bc,
         const std::string& name_periodic) {
        const CompatReport report = target
                                        ? check_lfa_compatible(*m_bc.op, *m_p.op, source, *target, tol, name_bc,
                                                               name_periodic)
                                        : check_lfa_compatible(*m_bc.op, *m_p.op, source, tol, name_bc, name_periodic);
        return report_dict(report);
      },
      py::arg("m_bc"), py::arg("m_periodic"), py::arg("source"), py::arg("target") = py::none(),
      py::arg("tol") = 1e-11, py::arg("name_bc") = "M_bc", py::arg("name_periodic") = "M_periodic");

  py::class_<CycleSpec>(m, "CycleSpec")
      .def(py::init([](const std::string& type, int nu1, int nu2, const SmootherSpec& smoother, int coarsest_n) {
             CycleSpec cycle;
             if (type == "two_grid")
               cycle.type = CycleSpec::Type::TwoGrid;
             else if (type == "v_cycle")
               cycle.type = CycleSpec::Type::VCycle;
             else
               throw std::invalid_argument("cycle type must be two_grid or v_cycle");
             cycle.nu1 = nu1;
             cycle.nu2 = nu2;
             cycle.smoother = smoother;
             cycle.coarsest_n = coarsest_n;
             return cycle;
           }),
           py::arg("type"), py::arg("nu1"), py::arg("nu2"), py::arg("smoother"), py::arg("coarsest_n") = 2);

  py::class_<Multigrid>(m, "Multigrid")
      .def(py::init([](const GridSpec& fine, double c, const CycleSpec& cycle, std::optional<int> anchor) {
             return anchor ? Multigrid(fine, c, cycle, *anchor) : Multigrid(fine, c, cycle);
           }),
           py::arg("fine"), py::arg("c"), py::arg("cycle"), py::arg("anchor") = py::none())
      .def_property_readonly("depth", &Multigrid::depth)
      .def("cycle", &Multigrid::cycle, py::arg("u"), py::arg("f"))
      .def("iterator", [](const Multigrid& mg) { return wrap(mg.iterator_op()); })
      .def("propagator", [](const Multigrid& mg) { return wrap(mg.propagator_op()); });

  m.def(
      "measure_asymptotic_rate",
      [](const PyOperator& propagator, int iterations, std::uint64_t seed) {
        const RateMeasurement rate = measure_asymptotic_rate(*propagator.op, iterations, seed);
        py::dict out;
        out["rho"] = rate.rho;
        out["history"] = rate.history;
        out["diverged"] = rate.diverged;
        out["seed"] = rate.seed;
        return out;
      },
      py::arg("propagator"), py::arg("iterations") = 100, py::arg("seed") = 42);
  m.def(
      "dense_spectral_radius",
      [](const PyOperator& op, Index guard) { return dense_spectral_radius(*op.op, guard); }, py::arg("op"),
      py::arg("guard") = 4096);

  m.def("harmonic_tuple", &harmonic_tuple, py::arg("theta_low"), py::arg("d"));
  m.def(
      "lfa_convergence_factor",
      [](const CycleSpec& cycle, const GridSpec& periodic, double c, std::optional<int> anchor) {
        const LfaResult result =
            lfa_convergence_factor(cycle, periodic, c, anchor ? *anchor : anchor_for(periodic.bc));
        py::dict out;
        out["rho"] = result.rho;
        out["argmax_theta"] = result.argmax.angles();
        py::list table;
        for (const auto& [freq, rho] : result.table) table.append(py::make_tuple(freq.angles(), rho));
        out["table"] = table;
        return out;
      },
      py::arg("cycle"), py::arg("periodic_grid"), py::arg("c"), py::arg("anchor") = py::none());
  m.def(
      "lfa_smoothing_factor",
      [](const SmootherSpec& spec, const GridSpec& periodic, double c, std::optional<int> anchor) {
        return lfa_smoothing_factor(spec, periodic, c, anchor ? *anchor : anchor_for(periodic.bc));
      },
      py::arg("spec"), py::arg("periodic_grid"), py::arg("c"), py::arg("anchor") = py::none());

  // Config-driven pipelines, mirroring the command line tool.
  m.def(
      "run_compare",
      [](const std::string& config_text) { return compare_report_json({run_compare(parse_config_text(config_text))}); },
      py::arg("config_json"), "Run one compare experiment; returns the JSON report document");
  m.def(
      "run_compare_payload",
      [](const std::string& config_text) {
        return compare_payload_json({run_compare(parse_config_text(config_text))});
      },
      py::arg("config_json"), "Deterministic payload only (no metadata/timestamp)");
  m.def(
      "run_sweep",
      [](const std::string& config_text, int workers) {
        const auto reports = run_sweep(parse_config_text(config_text), workers);
        return py::make_tuple(compare_report_json(reports), compare_csv(reports));
      },
      py::arg("config_json"), py::arg("workers") = 1, "Returns (json_report, csv_text)");
  m.def(
      "run_verify_compat",
      [](const std::string& config_text) {
        const CompatSuiteResult result = run_verify_compat(parse_config_text(config_text));
        py::list entries;
        for (const CompatReport& entry : result.entries) entries.append(report_dict(entry));
        py::dict out;
        out["entries"] = entries;
        out["all_ok"] = result.all_ok;
        out["first_failure"] = result.first_failure;
        return out;
      },
      py::arg("config_json"));
  m.def(
      "run_track",
      [](const std::string& config_text) { return track_report_json(run_track(parse_config_text(config_text))); },
      py::arg("config_json"));

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
