#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "sfock/composite.hpp"
#include "sfock/errors.hpp"
#include "sfock/fock_core.hpp"
#include "sfock/operators.hpp"
#include "sfock/quadrature.hpp"
#include "sfock/states.hpp"
#include "sfock/verify.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace sfock;

namespace {

TruncationConfig config(int dim, double tail_tol) { return TruncationConfig(dim, tail_tol); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of stretched_fock";

  static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
  static py::exception<SingularityError> singularity_error(m, "SingularityError", domain_error.ptr());
  static py::exception<GridMismatchError> grid_error(m, "GridMismatchError", PyExc_ValueError);
  static py::exception<TruncationError> truncation_error(m, "TruncationError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const TruncationError& e) {
      py::object err = py::handle(truncation_error.ptr())(e.what());
      err.attr("required_dim") = e.required_dim();
      PyErr_SetObject(truncation_error.ptr(), err.ptr());
    } catch (const SingularityError& e) {
      singularity_error(e.what());
    } catch (const DomainError& e) {
      domain_error(e.what());
    } catch (const GridMismatchError& e) {
      grid_error(e.what());
    }
  });

  py::class_<TruncationConfig>(m, "TruncationConfig")
      .def(py::init<int, double>(), "dim"_a, "tail_tol"_a = kDefaultTailTol)
      .def_static("for_mean", &TruncationConfig::for_mean, "mean"_a, "tail_tol"_a = kDefaultTailTol,
                  "min_dim"_a = 1)
      .def_property_readonly("dim", &TruncationConfig::dim)
      .def_property_readonly("tail_tol", &TruncationConfig::tail_tol)
      .def("__repr__", [](const TruncationConfig& c) {
        return "TruncationConfig(dim=" + std::to_string(c.dim()) + ", tail_tol=" +
               detail::short_number(c.tail_tol()) + ")";
      });

  py::class_<StretchLabel>(m, "StretchLabel")
      .def(py::init<Complex, double>(), "zeta"_a, "sigma"_a)
      .def_static("on_covering", &StretchLabel::on_covering, "modulus"_a, "phase"_a, "sigma"_a)
      .def_property_readonly("zeta", &StretchLabel::zeta)
      .def_property_readonly("sigma", &StretchLabel::sigma)
      .def_property_readonly("w", &StretchLabel::w)
      .def_property_readonly("w_conj", &StretchLabel::w_conj);

  py::class_<SqueezeLabel>(m, "SqueezeLabel")
      .def(py::init<Complex, double>(), "xi"_a, "upsilon"_a)
      .def_property_readonly("xi", &SqueezeLabel::xi)
      .def_property_readonly("upsilon", &SqueezeLabel::upsilon)
      .def_property_readonly("rho", &SqueezeLabel::rho)
      .def_property_readonly("theta", &SqueezeLabel::theta)
      .def_property_readonly("amplitude", &SqueezeLabel::amplitude)
      .def_property_readonly("squeeze_modulus", &SqueezeLabel::squeeze_modulus);

  py::class_<PhotonStats>(m, "PhotonStats")
      .def_readonly("mean", &PhotonStats::mean)
      .def_readonly("second_moment", &PhotonStats::second_moment)
      .def_readonly("mandel_q", &PhotonStats::mandel_q);

  py::class_<SqueezedExpectations>(m, "SqueezedExpectations")
      .def_readonly("ea", &SqueezedExpectations::ea)
      .def_readonly("ea2_published", &SqueezedExpectations::ea2_published)
      .def_readonly("ea2_operator", &SqueezedExpectations::ea2_operator)
      .def_readonly("en", &SqueezedExpectations::en);

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init([](double sigma, int radial_nodes, int angular_points, bool inverse_pi_prefactor) {
             QuadratureSpec spec;
             spec.sigma = sigma;
             spec.radial_nodes = radial_nodes;
             spec.angular_points = angular_points;
             spec.inverse_pi_prefactor = inverse_pi_prefactor;
             spec.validate();
             return spec;
           }),
           "sigma"_a = 1.0, "radial_nodes"_a = 32, "angular_points"_a = 0, "inverse_pi_prefactor"_a = false)
      .def_readonly("sigma", &QuadratureSpec::sigma)
      .def_readonly("radial_nodes", &QuadratureSpec::radial_nodes)
      .def_readonly("angular_points", &QuadratureSpec::angular_points);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("identity", &CheckResult::identity)
      .def_readonly("residual", &CheckResult::residual)
      .def_readonly("cases", &CheckResult::cases)
      .def_readonly("passed", &CheckResult::passed);

  m.def("required_dim", &required_dim, "mean"_a, "tail_tol"_a = kDefaultTailTol);

  // states
  m.def("make_state", [](const StretchLabel& l, int dim, double tol) { return make_state(l, config(dim, tol)); },
        "label"_a, "dim"_a, "tail_tol"_a = kDefaultTailTol);
  m.def("annihilation_residual",
        [](const StretchLabel& l, int dim) { return annihilation_residual(l, config(dim, kDefaultTailTol)); },
        "label"_a, "dim"_a);
  m.def("photon_pmf", &photon_pmf, "label"_a, "n"_a);
  m.def("photon_stats", &photon_stats, "label"_a);
  m.def("photon_stats_from_pmf", [](const std::vector<double>& pmf) { return photon_stats_from_pmf(pmf); },
        "pmf"_a);
  m.def("pmf_of", &pmf_of, "state"_a);
  m.def("evolve", [](const FockVector& s, double omega_t) { return evolve(s, EvolutionPhase{omega_t}); },
        "state"_a, "omega_t"_a);
  m.def("evolved_label", [](const StretchLabel& l, double omega_t) { return evolved_label(l, EvolutionPhase{omega_t}); },
        "label"_a, "omega_t"_a);
  m.def("overlap", &overlap, "eta"_a, "zeta"_a);

  // operators
  m.def("displacement", [](const StretchLabel& l, int dim) { return displacement(l, config(dim, kDefaultTailTol)); },
        "label"_a, "dim"_a);
  m.def("standard_displacement",
        [](Complex alpha, int dim) { return standard_displacement(alpha, config(dim, kDefaultTailTol)); }, "alpha"_a,
        "dim"_a);
  m.def(
      "displacement_normal_ordered",
      [](const StretchLabel& l, int dim) {
        auto r = displacement_normal_ordered(l, config(dim, kDefaultTailTol));
        return py::make_tuple(r.op, r.converged, r.stable_block);
      },
      "label"_a, "dim"_a, "Returns (matrix, converged, stable_block).");
  m.def("matrix_element", &matrix_element, "m"_a, "n"_a, "label"_a);
  m.def(
      "multiplication_law",
      [](const StretchLabel& a, const StretchLabel& b) {
        const auto r = multiplication_law(a, b);
        return py::make_tuple(r.combined_amplitude, r.phase_factor);
      },
      "z1"_a, "z2"_a, "Returns (combined_amplitude, phase_factor).");
  m.def("squeezing", [](const SqueezeLabel& l, int dim) { return squeezing(l, config(dim, kDefaultTailTol)); },
        "label"_a, "dim"_a);
  m.def(
      "bogoliubov",
      [](const SqueezeLabel& l) {
        const auto c = bogoliubov(l);
        return py::make_tuple(c.u, c.v);
      },
      "label"_a, "Returns (u, v).");

  // composite
  auto composite = [](const StretchLabel& d, const SqueezeLabel& s, int n) { return CompositeLabel{d, s, n}; };
  m.def(
      "squeezed_coherent",
      [=](const StretchLabel& d, const SqueezeLabel& s, int dim) {
        return squeezed_coherent(composite(d, s, 0), config(dim, kDefaultTailTol));
      },
      "displace"_a, "squeeze"_a, "dim"_a);
  m.def(
      "squeezed_expectations",
      [=](const StretchLabel& d, const SqueezeLabel& s) { return squeezed_expectations(composite(d, s, 0)); },
      "displace"_a, "squeeze"_a);
  m.def(
      "displaced_number",
      [](const StretchLabel& l, int n, int dim) { return displaced_number(l, n, config(dim, kDefaultTailTol)); },
      "label"_a, "n"_a, "dim"_a);
  m.def(
      "squeezed_displaced_number",
      [=](const StretchLabel& d, const SqueezeLabel& s, int n, int dim) {
        return squeezed_displaced_number(composite(d, s, n), config(dim, kDefaultTailTol));
      },
      "displace"_a, "squeeze"_a, "n"_a, "dim"_a);
  m.def("modified_displacement_prefactor", &modified_displacement_prefactor, "alpha"_a, "zeta"_a);
  m.def(
      "modified_displacement",
      [](const StretchLabel& a, const StretchLabel& z, int dim) {
        return modified_displacement(a, z, config(dim, kDefaultTailTol));
      },
      "alpha"_a, "zeta"_a, "dim"_a);
  m.def(
      "modified_coherent",
      [](const StretchLabel& a, const StretchLabel& z, int dim) {
        return modified_coherent(a, z, config(dim, kDefaultTailTol));
      },
      "alpha"_a, "zeta"_a, "dim"_a);

  // quadrature
  m.def(
      "gauss_laguerre",
      [](int order) {
        const auto rule = gauss_laguerre(order);
        return py::make_tuple(rule.nodes, rule.weights);
      },
      "order"_a, "Returns (nodes, weights).");
  m.def(
      "radial_completeness",
      [](int n, const QuadratureSpec& spec) {
        const auto r = radial_completeness(n, spec);
        return py::make_tuple(r.value, r.exact);
      },
      "n"_a, "spec"_a, "Returns (value, exact).");
  m.def("inner_product", &inner_product, "phi"_a, "psi"_a, "spec"_a);
  m.def("reconstruct_vector", &reconstruct_vector, "psi"_a, "spec"_a);

  m.def(
      "run_identity_suite",
      [](double tol, std::optional<double> sigma, std::optional<double> upsilon, std::uint64_t seed, int dim) {
        VerifyOptions opts;
        opts.tol = tol;
        opts.sigma = sigma;
        opts.upsilon = upsilon;
        opts.seed = seed;
        opts.dim = dim;
        py::gil_scoped_release release;
        return run_identity_suite(opts);
      },
      "tol"_a = 1e-8, "sigma"_a = py::none(), "upsilon"_a = py::none(), "seed"_a = 20240601, "dim"_a = 96);
}
