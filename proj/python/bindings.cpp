#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "infconv/config.hpp"
#include "infconv/core.hpp"
#include "infconv/criteria.hpp"
#include "infconv/fourier.hpp"
#include "infconv/gram.hpp"
#include "infconv/io.hpp"
#include "infconv/pipeline.hpp"

namespace py = pybind11;
using namespace infconv;

namespace {

const AdmissiblePair& pair_named(const Config& c, const std::string& name) { return c.system.menu()[c.system.find(name)]; }

std::string strategy_or(const std::string& s) { return s.empty() ? "cube" : s; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "infconv core";

  static py::exception<Error> exc(m, "InfconvError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      exc(e.what());
    }
  });

  py::class_<Config>(m, "Config")
      .def_property_readonly("dimension", [](const Config& c) { return c.dimension; })
      .def_property_readonly("pair_names",
                             [](const Config& c) {
                               std::vector<std::string> names;
                               for (const auto& p : c.system.menu()) names.push_back(p.name);
                               return names;
                             })
      .def_property_readonly("finite", [](const Config& c) { return c.system.finite(); })
      .def_property_readonly("length", [](const Config& c) { return c.system.length(); });

  py::class_<CertificationReport>(m, "Report")
      .def_property_readonly("verdict", [](const CertificationReport& r) { return std::string(to_string(r.verdict)); })
      .def_property_readonly("exit_code", &CertificationReport::exit_code)
      .def_property_readonly("rows",
                             [](const CertificationReport& r) {
                               std::vector<std::tuple<std::string, std::string, std::string>> rows;
                               for (const auto& h : r.rows) rows.emplace_back(h.name, std::string(to_string(h.grade)), h.detail);
                               return rows;
                             })
      .def("text", &CertificationReport::text)
      .def("csv", &CertificationReport::csv);

  m.def("load_config", [](const std::string& path) { return parse_config(path); }, py::arg("path"));
  m.def("parse_config", [](const std::string& text) { return parse_config_text(text); }, py::arg("text"));

  m.def(
      "check_admissible",
      [](const Config& c, const std::string& pair, bool exact) {
        return check_admissible(pair_named(c, pair), exact ? CheckMode::Exact : CheckMode::Float).admissible;
      },
      py::arg("config"), py::arg("pair"), py::arg("exact") = true);

  m.def(
      "find_spectra",
      [](const Config& c, const std::string& pair, std::size_t max_count) {
        const auto& p = pair_named(c, pair);
        return find_spectra(p.R, p.B.digits(), max_count);
      },
      py::arg("config"), py::arg("pair"), py::arg("max_count") = 10);

  m.def("canonical_spectrum", [](const Config& c, std::size_t n) { return canonical_spectrum(c.system, n); },
        py::arg("config"), py::arg("n"));

  m.def(
      "mu_hat", [](const Config& c, std::size_t depth, const std::vector<double>& xi) { return mu_n_hat(c.system, depth, xi); },
      py::arg("config"), py::arg("depth"), py::arg("xi"), "Fourier transform of mu_depth at xi.");

  m.def(
      "atoms",
      [](const Config& c, std::size_t depth) {
        std::vector<std::pair<std::vector<std::string>, std::string>> out;
        const auto mu = build_mu_n(c.system, depth, c.params.atom_cap);
        for (const auto& a : mu.atoms()) {
          std::vector<std::string> point;
          for (const auto& q : a.point) point.push_back(to_string(q));
          out.emplace_back(std::move(point), to_string(a.weight));
        }
        return out;
      },
      py::arg("config"), py::arg("depth"), "Atoms of mu_depth as ([coordinates], weight) rational strings.");

  m.def(
      "sample",
      [](const Config& c, std::size_t depth, std::size_t count, std::uint64_t seed) {
        py::gil_scoped_release release;
        return infconv::sample(c.system, depth, count, seed);
      },
      py::arg("config"), py::arg("depth"), py::arg("count"), py::arg("seed") = 1);

  m.def(
      "gram_identity",
      [](const Config& c, std::size_t n) { return gram_matrix_product(c.system, n, canonical_spectrum(c.system, n)).identity(); },
      py::arg("config"), py::arg("n"), "Whether the canonical spectrum of level n is exactly orthonormal for mu_n.");

  m.def(
      "certify",
      [](const Config& c, const std::string& strategy) {
        py::gil_scoped_release release;
        return certify_spectrality(c.system, parse_strategy(strategy_or(strategy)), certify_options(c));
      },
      py::arg("config"), py::arg("strategy") = "cube");

  m.def(
      "hypotheses",
      [](const Config& c) {
        std::vector<std::tuple<std::string, std::string, std::string>> rows;
        for (const auto& h : hypothesis_matrix(c.system, matrix_options(c)))
          rows.emplace_back(h.name, std::string(to_string(h.grade)), h.detail);
        return rows;
      },
      py::arg("config"));

  m.def(
      "zero_scan",
      [](const Config& c, std::size_t tail, std::size_t resolution, int lattice, double tol) {
        const MaskProductEvaluator nu(c.system, default_truncation_depth(c.system, tail), tail);
        return scan_zero_set([&](std::span<const double> x) { return nu(x); }, c.system.dim(), resolution, lattice, tol)
            .points;
      },
      py::arg("config"), py::arg("tail") = 0, py::arg("resolution") = 64, py::arg("lattice") = 8, py::arg("tol") = 1e-6);

  m.def(
      "find_isolating_digit",
      [](const std::vector<std::vector<Int>>& R, const std::vector<IVec>& B) {
        return infconv::find_isolating_digit(IMat::from_rows(R), B);
      },
      py::arg("R"), py::arg("B"));
}
