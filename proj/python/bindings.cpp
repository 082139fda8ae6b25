#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "plurikit/brackets.hpp"
#include "plurikit/certificates.hpp"
#include "plurikit/errors.hpp"
#include "plurikit/parallel.hpp"
#include "plurikit/planar.hpp"
#include "plurikit/radial.hpp"
#include "plurikit/series.hpp"

namespace py = pybind11;
using namespace plurikit;

namespace {

SampledSet make_set(const std::vector<CVec>& points) {
  std::vector<ProjPoint> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.emplace_back(p);
  return SampledSet(std::move(pts));
}

SearchBudget make_budget(int degree_cap, std::uint64_t seed, int jobs) {
  SearchBudget b;
  b.degree_cap = degree_cap;
  b.seed = seed;
  b.jobs = jobs;
  return b;
}

std::string cert_json(const Certificate& c) { return certificate_to_json(c).dump(); }

}  // namespace

PYBIND11_MODULE(_plurikit, m) {
  m.doc() = "plurikit core bindings";
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);

  m.def("branch_threshold", &branch_threshold, py::arg("rho"));
  m.def("solve_lambda", &solve_lambda, py::arg("rho"), py::arg("s"));
  m.def(
      "sigma_star_ball",
      [](double rho, double s, double r) {
        const SigmaValue v = sigma_star_ball_detail({rho, s, r});
        return py::make_tuple(v.value, v.branch, v.lambda ? py::cast(*v.lambda) : py::none());
      },
      py::arg("rho"), py::arg("s"), py::arg("r"), "(sigma_star, branch, lambda or None)");
  m.def(
      "envelope_gap",
      [](double rho, double s, int grid) {
        return envelope_gap(convex_envelope_oracle(rho, s, grid, default_envelope_end(rho, s)), rho, s);
      },
      py::arg("rho"), py::arg("s"), py::arg("grid") = 4096);

  py::class_<GridSpec>(m, "GridSpec")
      .def_static("box", &GridSpec::box, py::arg("xmin"), py::arg("xmax"), py::arg("ymin"), py::arg("ymax"),
                  py::arg("h"))
      .def_readonly("h", &GridSpec::h)
      .def_readonly("width", &GridSpec::width)
      .def_readonly("height", &GridSpec::height);

  py::class_<GridRegion>(m, "GridRegion")
      .def("count", &GridRegion::count)
      .def("area", &GridRegion::area)
      .def("empty", &GridRegion::empty)
      .def("test", &GridRegion::test, py::arg("i"), py::arg("j"))
      .def("__or__", [](const GridRegion& a, const GridRegion& b) { return a | b; })
      .def("__eq__", [](const GridRegion& a, const GridRegion& b) { return a == b; })
      .def("subset_of", &GridRegion::subset_of);

  m.def("rasterize_disk", &rasterize_disk, py::arg("spec"), py::arg("center"), py::arg("radius"));
  m.def("rasterize_circle", &rasterize_circle, py::arg("spec"), py::arg("center"), py::arg("radius"));
  m.def("rasterize_annulus", &rasterize_annulus, py::arg("spec"), py::arg("center"), py::arg("r_in"),
        py::arg("r_out"));
  m.def("rasterize_point", &rasterize_point, py::arg("spec"), py::arg("z"));
  m.def("polynomial_hull", &polynomial_hull, py::arg("region"));
  m.def("neighborhood", &neighborhood, py::arg("region"), py::arg("radius"));
  m.def(
      "write_region",
      [](const GridRegion& r, const std::string& path, std::uint64_t seed) {
        std::ofstream os(path);
        if (!os) throw DomainError("cannot open " + path);
        write_region(os, r, seed, "python");
      },
      py::arg("region"), py::arg("path"), py::arg("seed") = 0);
  m.def(
      "read_region",
      [](const std::string& path) {
        std::ifstream is(path);
        if (!is) throw DomainError("cannot open " + path);
        return read_region(is);
      },
      py::arg("path"));

  m.def(
      "bracket",
      [](const std::vector<MultiIndex>& exponents, const CVec& coeffs, const CVec& z) {
        if (exponents.size() != coeffs.size()) throw DomainError("exponents and coefficients differ in length");
        TermMap t;
        for (std::size_t i = 0; i < coeffs.size(); ++i) t[exponents[i]] += coeffs[i];
        return bracket(HomoPoly::from_terms(static_cast<int>(z.size()), t), ProjPoint(z));
      },
      py::arg("exponents"), py::arg("coeffs"), py::arg("z"), "<p(Z)> for p = sum coeffs[i] z^exponents[i]");

  m.def(
      "q_lower_bound",
      [](const std::vector<CVec>& K, const CVec& Z, double t, int degree_cap, std::uint64_t seed, int jobs) {
        return cert_json(q_lower_bound(make_set(K), ProjPoint(Z), t, make_budget(degree_cap, seed, jobs)));
      },
      py::arg("K"), py::arg("Z"), py::arg("t"), py::arg("degree_cap") = 64, py::arg("seed") = 0x5eed,
      py::arg("jobs") = 1, "certificate as a JSON string");
  m.def(
      "property_j_certificate",
      [](const std::vector<CVec>& K, const CVec& X, double eta, double eps, int degree_cap, std::uint64_t seed,
         int jobs) {
        return cert_json(
            property_j_certificate(make_set(K), ProjPoint(X), eta, eps, make_budget(degree_cap, seed, jobs)));
      },
      py::arg("K"), py::arg("X"), py::arg("eta"), py::arg("eps"), py::arg("degree_cap") = 64,
      py::arg("seed") = 0x5eed, py::arg("jobs") = 1);
  m.def(
      "refute_hull_level",
      [](const std::vector<CVec>& K, const CVec& Z, int level, int degree_cap, std::uint64_t seed,
         int jobs) -> std::optional<std::string> {
        auto c = refute_hull_level(make_set(K), ProjPoint(Z), level, make_budget(degree_cap, seed, jobs));
        if (!c) return std::nullopt;
        return cert_json(*c);
      },
      py::arg("K"), py::arg("Z"), py::arg("m"), py::arg("degree_cap") = 64, py::arg("seed") = 0x5eed,
      py::arg("jobs") = 1);
  m.def(
      "reverify",
      [](const std::string& cert, const std::vector<CVec>& K) {
        const SampledSet S = make_set(K);
        const Verification v = reverify(certificate_from_json(nlohmann::json::parse(cert)), &S);
        return py::make_tuple(v.ok, v.reason);
      },
      py::arg("certificate"), py::arg("K"));

  py::class_<FormalSeries>(m, "FormalSeries")
      .def_static(
          "load",
          [](const std::string& path) {
            std::ifstream is(path);
            if (!is) throw DomainError("cannot open " + path);
            return read_series(is);
          },
          py::arg("path"))
      .def("__len__", &FormalSeries::size)
      .def("degrees", [](const FormalSeries& f) {
        std::vector<long long> d;
        for (const auto& c : f.components()) d.push_back(c.first);
        return d;
      });
  m.def(
      "conv_membership",
      [](const FormalSeries& f, const CVec& Z, double threshold) {
        VerdictConfig cfg;
        cfg.threshold = threshold;
        const DirectionVerdict v = conv_membership(f, ProjPoint(Z), cfg);
        return py::make_tuple(to_string(v.status), v.sup_seen, v.growth_slope);
      },
      py::arg("series"), py::arg("Z"), py::arg("threshold") = 1.0, "(status, sup_seen, growth_slope)");
  m.def(
      "build_series_main",
      [](const std::vector<std::vector<CVec>>& sets, int k_max, std::size_t cover_per_level, std::uint64_t seed,
         int jobs) {
        std::vector<SampledSet> K;
        int nvars = 0;
        for (const auto& s : sets) {
          K.push_back(make_set(s));
          if (!K.back().empty()) nvars = K.back().nvars();
        }
        if (nvars == 0) throw DomainError("need at least one nonempty set");
        SearchBudget b;
        b.seed = seed;
        b.jobs = jobs;
        const SeriesBuild build =
            build_series_main(K, default_cover_schedule(nvars, cover_per_level, task_seed(seed, 1)), k_max, b);
        return py::make_tuple(build.series, build.report.warnings);
      },
      py::arg("sets"), py::arg("k_max"), py::arg("cover_per_level") = 8, py::arg("seed") = 0x5eed,
      py::arg("jobs") = 1, "(series, warnings)");
}
