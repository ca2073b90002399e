#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "twsusp/config.hpp"
#include "twsusp/error.hpp"
#include "twsusp/report.hpp"

namespace py = pybind11;
using namespace twsusp;

namespace {

using Rows = std::vector<std::vector<py::object>>;

IntMatrix to_matrix(const Rows& rows) {
  const std::size_t r = rows.size(), c = r ? rows.front().size() : 0;
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
    for (std::size_t j = 0; j < c; ++j) a(i, j) = Integer(py::str(rows[i][j]).cast<std::string>());
  }
  return a;
}

Rows to_rows(const IntMatrix& a) {
  Rows rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) rows[i].push_back(py::int_(py::str(a(i, j).get_str())));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_twsusp, m) {
  m.doc() = "Twisted suspension workbench";

  py::register_exception<Error>(m, "TwsuspError", PyExc_ValueError);

  m.def(
      "snf",
      [](const Rows& rows) {
        const SnfDecomposition d = snf(to_matrix(rows));
        return py::make_tuple(to_rows(d.left), to_rows(d.diag), to_rows(d.right));
      },
      py::arg("matrix"), "Smith normal form (left, diag, right) with left * A * right = diag.");

  m.def(
      "homology_json",
      [](const std::string& expr, const std::string& euler) {
        Manifold x = parse_manifold(expr);
        if (!euler.empty()) x = suspend(x, parse_euler_class(euler));
        return dump_json(manifold_json(x));
      },
      py::arg("expr"), py::arg("euler") = "", "Report for an expression, optionally suspended by `euler`.");

  m.def(
      "plumb_json", [](const std::string& text) { return dump_json(plumbing_json(parse_plumbing(text))); },
      py::arg("text"), "Reduced graph and boundary of a plumbing description.");

  m.def(
      "gon_json",
      [](const std::vector<std::vector<long>>& labels, long n) {
        GonLabelling g;
        for (const auto& l : labels) {
          IntVector v;
          for (long x : l) v.emplace_back(x);
          g.labels.push_back(std::move(v));
        }
        g.n = n > 0 ? n : (labels.empty() ? 2 : static_cast<long>(labels.front().size()) + 2);
        return dump_json(gon_json(g));
      },
      py::arg("labels"), py::arg("n") = 0, "Validation checks and b2 of a gon labelling.");

  m.def(
      "standard_gon_json", [](long l) { return dump_json(gon_json(standard_gon(l))); }, py::arg("l"));

  m.def(
      "certify_json",
      [](const std::string& config_text) {
        const CertifyConfig cfg = certify_config(parse_config(config_text));
        py::gil_scoped_release release;
        return dump_json(certification_json(certify(cfg.n, cfg.s0, cfg.connection, cfg.ric_min, cfg.options)));
      },
      py::arg("config"), "Certification result for a configuration text.");

  m.def(
      "profile_csv",
      [](const std::string& config_text) {
        const CertifyConfig cfg = certify_config(parse_config(config_text));
        py::gil_scoped_release release;
        const CertificationResult res = certify(cfg.n, cfg.s0, cfg.connection, cfg.ric_min, cfg.options);
        std::ostringstream out;
        export_profile(res.profile, out);
        return out.str();
      },
      py::arg("config"), "CSV of the certified warping profile.");
}
