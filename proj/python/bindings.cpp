#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "monge/figure.hpp"
#include "monge/generators.hpp"
#include "monge/scenario.hpp"
#include "monge/sweep.hpp"

namespace py = pybind11;
using namespace monge;

namespace {

// Documents cross the boundary as JSON text; the package wrapper turns them
// into dicts with the json module.

std::string verify_json(const std::string& scenario, double tolerance, bool exact) {
  VerifyOptions opts;
  opts.tol = Tolerance::uniform(tolerance);
  opts.exact = exact;
  const auto out = verify_scenario(Json::parse(scenario), opts);
  return out.report.dump();
}

std::vector<std::string> generate_json(const std::string& geometry, int dim, const std::string& kind, int count,
                                       std::uint64_t seed, double ratio_gap, std::optional<double> perturb,
                                       bool rational) {
  GenSpec spec;
  spec.geometry = parse_geometry(geometry);
  spec.dimension = dim;
  spec.kind = parse_gen_kind(kind);
  spec.count = count;
  spec.seed = seed;
  spec.ratio_gap = ratio_gap;
  spec.perturb = perturb;
  spec.rational = rational;
  spec.validate();
  std::vector<std::string> out;
  for (int k = 0; k < count; ++k) out.push_back(generate_scenario(spec, k).dump());
  return out;
}

py::list sweep(const std::string& geometry, const std::string& dims, int per_cell, std::uint64_t seed,
               double tolerance, double perturb, double ratio_gap) {
  SweepSpec spec;
  spec.geometry = parse_geometry(geometry);
  std::tie(spec.dim_lo, spec.dim_hi) = parse_dims(dims);
  spec.per_cell = per_cell;
  spec.seed = seed;
  spec.tol = Tolerance::uniform(tolerance);
  spec.perturb = perturb;
  spec.ratio_gap = ratio_gap;
  py::list rows;
  for (const auto& r : run_sweep(spec)) {
    py::dict d;
    d["geometry"] = to_string(r.geometry);
    d["kind"] = to_string(r.kind);
    d["dimension"] = r.dimension;
    d["pos_pass"] = r.pos_pass;
    d["pos_fail"] = r.pos_fail;
    d["neg_pass"] = r.neg_pass;
    d["neg_fail"] = r.neg_fail;
    d["max_pos_residual"] = r.max_pos_residual;
    d["min_neg_residual"] = r.min_neg_residual;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_monge, m) {
  m.doc() = "Homothety centers, Monge hyperplanes and edge-ratio checks in Euclidean, spherical and hyperbolic space.";

  static py::exception<GeometryError> geometry_error(m, "GeometryError", PyExc_ValueError);
  static py::exception<ScenarioError> scenario_error(m, "ScenarioError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const GeometryError& e) {
      // message carries the JSON error document so the wrapper can read the kind
      PyErr_SetString(geometry_error.ptr(), error_json(e).dump().c_str());
    } catch (const ScenarioError& e) {
      PyErr_SetString(scenario_error.ptr(), e.what());
    } catch (const Json::exception& e) {
      PyErr_SetString(scenario_error.ptr(), e.what());
    }
  });

  m.def("verify_json", &verify_json, py::arg("scenario"), py::arg("tolerance") = 1e-9, py::arg("exact") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("generate_json", &generate_json, py::arg("geometry"), py::arg("dim"), py::arg("kind"), py::arg("count"),
        py::arg("seed"), py::arg("ratio_gap") = 1.5, py::arg("perturb") = py::none(), py::arg("rational") = false);
  m.def("sweep", &sweep, py::arg("geometry") = "euclidean", py::arg("dims") = "2..4", py::arg("per_cell") = 100,
        py::arg("seed") = 0, py::arg("tolerance") = 1e-9, py::arg("perturb") = 1e-2, py::arg("ratio_gap") = 1.5);
  m.def(
      "figure_svg", [](const std::string& scenario) { return render_figure(Json::parse(scenario)); },
      py::arg("scenario"));

  m.def("scenario_seed", &scenario_seed, py::arg("seed"), py::arg("k"));
  m.def(
      "splitmix64", [](std::uint64_t seed, int count) {
        SplitMix64 rng(seed);
        std::vector<std::uint64_t> out(count);
        for (auto& v : out) v = rng.next();
        return out;
      },
      py::arg("seed"), py::arg("count"));
}
