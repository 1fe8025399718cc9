// Python bindings. Structured values cross the boundary in the JSON
// encodings of qpent/io.hpp; the qpent package decodes them.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpent/cluster.hpp"
#include "qpent/errors.hpp"
#include "qpent/io.hpp"
#include "qpent/kop.hpp"
#include "qpent/moduli.hpp"
#include "qpent/qtorus.hpp"
#include "qpent/specfun.hpp"
#include "qpent/suites.hpp"

namespace py = pybind11;
using namespace qpent;
using nlohmann::json;

namespace {

kop::KConfig k_config(double hbar, double tol) {
  kop::KConfig c;
  c.hbar = hbar;
  c.quad.rel_tol = tol;
  c.fast_path = true;
  return c;
}

wspace::WVector wvector(const std::string& text) { return io::wvector_from_json(json::parse(text)); }

moduli::Config5 config5(const std::vector<std::string>& points) {
  if (points.size() != 5) throw std::invalid_argument("expected 5 points");
  moduli::Config5 x;
  for (std::size_t i = 0; i < 5; ++i)
    x[i] = points[i] == "inf" ? moduli::ProjPoint::infinity() : moduli::ProjPoint::finite(io::parse_rational(points[i]));
  return x;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum dilogarithm, the pentagon operator K and the cluster structures it intertwines";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  // Phi and friends.
  m.def(
      "phi", [](std::complex<double> z, std::complex<double> hbar) { return specfun::phi_integral(z, specfun::PhiParams(hbar)); },
      py::arg("z"), py::arg("hbar") = 1.0, "Phi^hbar(z) by contour integration (|Im z| < pi (1 + Re hbar)).");
  m.def(
      "phi_product",
      [](std::complex<double> z, std::complex<double> hbar) { return specfun::phi_product(z, specfun::PhiParams(hbar)); },
      py::arg("z"), py::arg("hbar"), "Phi^hbar(z) from the infinite products (needs Im hbar > 0).");
  m.def(
      "dilog_L2", [](std::complex<double> x) { return specfun::dilog_L2(x); }, py::arg("x"));
  m.def(
      "duality_residual", [](std::complex<double> z, double hbar) { return specfun::duality_residual(z, hbar); },
      py::arg("z"), py::arg("hbar"));
  m.def(
      "shift_residuals",
      [](std::complex<double> z, double hbar) {
        const specfun::PhiParams P(hbar);
        return std::pair{specfun::shift_residual_hbar(z, P), specfun::shift_residual_unit(z, P)};
      },
      py::arg("z"), py::arg("hbar"));

  // K.
  m.def(
      "apply_K",
      [](const std::string& w, const std::vector<std::complex<double>>& z, double hbar, double tol) {
        return kop::KOperator(k_config(hbar, tol)).apply_to_W(wvector(w), z);
      },
      py::arg("w_json"), py::arg("z"), py::arg("hbar"), py::arg("tol") = 1e-10,
      "K w / (2 pi sqrt(hbar)) at the given points.");
  m.def(
      "unitarity_ratio",
      [](const std::string& w, double hbar) { return kop::unitarity_ratio(kop::KOperator(k_config(hbar, 1e-10)), wvector(w)); },
      py::arg("w_json"), py::arg("hbar"));
  m.def(
      "intertwine_basic",
      [](int idx, const std::string& w, double hbar, double tol) {
        return kop::intertwine_basic(idx, kop::KOperator(k_config(hbar, tol)), wvector(w));
      },
      py::arg("idx"), py::arg("w_json"), py::arg("hbar"), py::arg("tol") = 1e-12);
  m.def(
      "pentagon",
      [](double hbar, std::size_t N, double L, std::uint64_t seed, std::size_t samples) {
        const kop::KOperator K(k_config(hbar, 1e-10));
        kop::PentagonOptions opt;
        opt.grid = {L, N};
        const auto vs = suites::sample_vectors(seed, samples);
        return io::pentagon_report(hbar, opt.grid, kop::pentagon_check(vs, K, opt)).dump();
      },
      py::arg("hbar") = 1.0, py::arg("N") = 4096, py::arg("L") = 40.0, py::arg("seed") = 20240601,
      py::arg("samples") = 4, "JSON report of the fifth-power fit.");
  m.def(
      "sample_vectors",
      [](std::uint64_t seed, std::size_t count) {
        json out = json::array();
        for (const auto& v : suites::sample_vectors(seed, count)) out.push_back(io::to_json(v));
        return out.dump();
      },
      py::arg("seed"), py::arg("count"));

  // Classical and quantum cluster structures.
  m.def(
      "tropical_gamma",
      [](int a, int b, int k) {
        const auto p = cluster::tropical_gamma_power({a, b}, k);
        return std::pair{p.a, p.b};
      },
      py::arg("a"), py::arg("b"), py::arg("k") = 1);
  m.def(
      "canonical_IA", [](int a, int b) { return io::to_json(cluster::canonical_IA({a, b})).dump(); }, py::arg("a"),
      py::arg("b"));
  m.def(
      "canonical_IAq", [](int a, int b) { return io::to_json(qtorus::canonical_IAq({a, b})).dump(); }, py::arg("a"),
      py::arg("b"));
  m.def(
      "multiply_in_basis",
      [](std::pair<int, int> p, std::pair<int, int> p2) {
        json out = json::array();
        for (const auto& [r, c] : cluster::multiply_in_basis_classical({p.first, p.second}, {p2.first, p2.second}))
          out.push_back({r.a, r.b, c});
        return out.dump();
      },
      py::arg("p"), py::arg("p2"));

  // Moduli.
  m.def(
      "cross_ratio",
      [](const std::vector<std::string>& pts) {
        if (pts.size() != 4) throw std::invalid_argument("expected 4 points");
        auto P = [&](std::size_t i) {
          return pts[i] == "inf" ? moduli::ProjPoint::infinity() : moduli::ProjPoint::finite(io::parse_rational(pts[i]));
        };
        return qpent::to_string(moduli::cross_ratio(P(0), P(1), P(2), P(3)));
      },
      py::arg("points"), "Exact cross-ratio of four points given as \"p/q\" strings or \"inf\".");
  m.def(
      "regular_function",
      [](const std::vector<std::string>& pts, int a, int b, int c) {
        return qpent::to_string(moduli::regular_function(config5(pts), {a, b, c}));
      },
      py::arg("points"), py::arg("a"), py::arg("b"), py::arg("c"));
  m.def(
      "independence_check",
      [](int degree) {
        const auto r = moduli::independence_check(degree);
        return json{{"degree_bound", r.degree_bound}, {"labels", r.labels}, {"distinct_labels", r.distinct_labels},
                    {"rank", r.rank}, {"printed_rank", r.printed_rank}, {"passed", r.passed()}}
            .dump();
      },
      py::arg("degree") = 2);

  // Suites.
  m.def("suite_names", &suites::suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, bool timing) {
        suites::RunConfig cfg;
        cfg.seed = seed;
        cfg.timing = timing;
        suites::Results r;
        {
          py::gil_scoped_release release;
          r = suites::run_suite(name, cfg);
        }
        return suites::to_json(r, timing).dump();
      },
      py::arg("name"), py::arg("seed") = 20240601, py::arg("timing") = false);
}
