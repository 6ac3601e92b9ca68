#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "tractlab/complexity.hpp"
#include "tractlab/rank_approx.hpp"
#include "tractlab/smoothness.hpp"
#include "tractlab/spectra.hpp"
#include "tractlab/tensor.hpp"
#include "tractlab/tractability.hpp"

namespace py = pybind11;
using namespace tractlab;

namespace {

Process parse_process(const std::string& s) { return process_from_string(s); }

py::dict spectrum_dict(const UnivariateSpectrum& sp) {
  py::dict d;
  d["process"] = to_string(sp.process);
  d["r"] = sp.r;
  d["log_eigenvalues"] = sp.log_eigenvalues;
  d["log_trace"] = sp.log_trace;
  d["log_tail"] = sp.log_tail;
  d["two_grid_error"] = sp.two_grid_error;
  d["solver"] = sp.method.solver;
  d["grid"] = sp.method.grid;
  return d;
}

} // namespace

PYBIND11_MODULE(_tractlab, m) {
  m.doc() = "spectra, information complexity and tractability of integrated-process approximation";

  py::class_<SmoothnessSequence>(m, "SmoothnessSequence")
      .def_static("parse", [](const std::string& s) { return SmoothnessSequence::parse(s); })
      .def("__call__", &SmoothnessSequence::operator())
      .def_property_readonly("spec", [](const SmoothnessSequence& s) { return s.spec(); });

  m.def("euler_eigenvalue", &euler_eigenvalue, py::arg("j"), py::arg("r"));
  m.def("euler_log_eigenvalue", &euler_log_eigenvalue, py::arg("j"), py::arg("r"));
  m.def("euler_trace", &euler_trace, py::arg("r"));
  m.def("euler_kernel", &euler_kernel, py::arg("x"), py::arg("y"), py::arg("r"));
  m.def("wiener_kernel", &wiener_kernel, py::arg("x"), py::arg("y"), py::arg("r"));
  m.def("wiener_trace", &wiener_trace, py::arg("r"));
  m.def(
      "euler_spectrum",
      [](int r, std::size_t J) { return spectrum_dict(euler_spectrum(r, J)); },
      py::arg("r"), py::arg("count"));
  m.def(
      "wiener_spectrum",
      [](int r, std::size_t J, int grid, bool force_nystrom, double tolerance) {
        WienerOptions opts;
        opts.grid = grid;
        opts.force_nystrom = force_nystrom;
        opts.tolerance = tolerance;
        return spectrum_dict(wiener_spectrum(r, J, opts));
      },
      py::arg("r"), py::arg("count"), py::arg("grid") = 0, py::arg("force_nystrom") = false,
      py::arg("tolerance") = 1e-3);

  m.def(
      "top_products",
      [](const std::vector<std::pair<std::string, int>>& factors, std::size_t J, std::size_t m) {
        std::vector<UnivariateSpectrum> spectra;
        for (const auto& [proc, r] : factors) {
          spectra.push_back(parse_process(proc) == Process::euler ? euler_spectrum(r, J)
                                                                  : wiener_spectrum(r, J));
        }
        auto acc = top_products(spectra, m);
        py::list out;
        for (const auto& pe : acc.enumerated) {
          py::dict row;
          row["index"] = pe.index;
          row["log_value"] = pe.log_value;
          out.append(row);
        }
        return out;
      },
      py::arg("factors"), py::arg("depth"), py::arg("m"));

  m.def(
      "n_eps",
      [](double eps, int d, const std::string& process, const std::string& seq) {
        auto res = n_eps(eps, d, parse_process(process), SmoothnessSequence::parse(seq));
        py::dict out;
        out["n"] = res.n;
        out["eps"] = res.eps;
        out["d"] = res.d;
        out["error_fraction"] = res.achieved_error_fraction;
        out["certified"] = res.certification == Certification::certified;
        out["certification"] = to_string(res.certification);
        return out;
      },
      py::arg("eps"), py::arg("d"), py::arg("process"), py::arg("seq"));

  m.def(
      "error_of_n",
      [](std::int64_t n, int d, const std::string& process, const std::string& seq) {
        auto e = error_of_n(n, d, parse_process(process), SmoothnessSequence::parse(seq));
        return py::make_tuple(e.error_lo, e.error_hi);
      },
      py::arg("n"), py::arg("d"), py::arg("process"), py::arg("seq"));

  m.def(
      "curse_lower_bound_log",
      [](double eps, int d, const std::string& process, const std::string& seq) {
        return curse_lower_bound_log(eps, d, parse_process(process), SmoothnessSequence::parse(seq));
      },
      py::arg("eps"), py::arg("d"), py::arg("process"), py::arg("seq"));

  m.def(
      "euler_quasi_criterion",
      [](const std::string& seq, std::int64_t d) {
        return euler_quasi_criterion(SmoothnessSequence::parse(seq), d);
      },
      py::arg("seq"), py::arg("d"));
  m.def(
      "wiener_quasi_criterion",
      [](const std::string& seq, std::int64_t d) {
        return wiener_quasi_criterion(SmoothnessSequence::parse(seq), d);
      },
      py::arg("seq"), py::arg("d"));
  m.def(
      "spt_sum_euler",
      [](const std::string& seq, double tau, std::int64_t K) {
        return spt_sum_euler(SmoothnessSequence::parse(seq), tau, K);
      },
      py::arg("seq"), py::arg("tau"), py::arg("K"));
  m.def("euler_spt_exponent", &euler_spt_exponent, py::arg("r1"), py::arg("aE"));
  m.def("wiener_spt_exponent_bounds", &wiener_spt_exponent_bounds, py::arg("r1"), py::arg("s"));

  m.def("rank1_sq_error_pointwise", &rank1_sq_error_pointwise, py::arg("r"), py::arg("t"));
  m.def("rank1_sq_error_l2",
        [](int r) {
          auto c = rank1_sq_error_l2(r);
          return py::make_tuple(c.value(), c.bound());
        },
        py::arg("r"));
  m.def("rank2_sq_error_l2",
        [](int r) {
          auto c = rank2_sq_error_l2(r);
          return py::make_tuple(c.value(), c.bound());
        },
        py::arg("r"));
  m.def("approximation_numbers", &approximation_numbers, py::arg("r"), py::arg("n_max"));
  m.def("tau_ratio_sup", &tau_ratio_sup, py::arg("r"), py::arg("tau0"), py::arg("tau_grid_points") = 13);
  m.def("wiener_largest_predictions", &wiener_largest_predictions, py::arg("r"));
  m.def(
      "rate_estimate",
      [](const std::string& seq, const std::string& mode, std::int64_t K, double s) {
        RateMode m_ = mode == "log" ? RateMode::log_rate : RateMode::power_rate;
        return rate_estimate(SmoothnessSequence::parse(seq), m_, K, s);
      },
      py::arg("seq"), py::arg("mode"), py::arg("K"), py::arg("s") = 0.0);
  m.def(
      "weak_criterion",
      [](const std::string& process, const std::string& seq, double tau, std::int64_t d) {
        return weak_criterion(parse_process(process), SmoothnessSequence::parse(seq), tau, d);
      },
      py::arg("process"), py::arg("seq"), py::arg("tau"), py::arg("d"));
  m.def(
      "poly_criterion_log",
      [](const std::string& process, const std::string& seq, double tau, double q, std::int64_t d) {
        return poly_criterion_log(parse_process(process), SmoothnessSequence::parse(seq), tau, q, d);
      },
      py::arg("process"), py::arg("seq"), py::arg("tau"), py::arg("q"), py::arg("d"));

  m.def(
      "sample_paths",
      [](int r, const std::vector<double>& grid, int count, std::uint64_t seed) {
        auto paths = sample_paths(r, grid, count, seed);
        py::list out;
        for (const auto& p : paths) out.append(p.values);
        return out;
      },
      py::arg("r"), py::arg("grid"), py::arg("count"), py::arg("seed"));

  py::register_exception<invalid_argument_error>(m, "InvalidArgumentError", PyExc_ValueError);
  py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);
}
