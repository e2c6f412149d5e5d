#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alexandrov/angles.hpp"
#include "alexandrov/comparison.hpp"
#include "alexandrov/cube_surface.hpp"
#include "alexandrov/scenario.hpp"
#include "alexandrov/variation.hpp"

namespace py = pybind11;
using namespace alexandrov;

// Points cross the boundary as 2- or 3-sequences of floats and come back as
// 3-tuples.
namespace pybind11::detail {
template <>
struct type_caster<Vec3> {
  PYBIND11_TYPE_CASTER(Vec3, const_name("Point"));

  bool load(handle src, bool) {
    if (!isinstance<sequence>(src) || isinstance<str>(src)) return false;
    const auto seq = reinterpret_borrow<sequence>(src);
    if (seq.size() != 2 && seq.size() != 3) return false;
    value.x = seq[0].cast<double>();
    value.y = seq[1].cast<double>();
    value.z = seq.size() == 3 ? seq[2].cast<double>() : 0.0;
    return true;
  }

  static handle cast(const Vec3& v, return_value_policy, handle) {
    return py::make_tuple(v.x, v.y, v.z).release();
  }
};
}  // namespace pybind11::detail

using namespace pybind11::literals;

namespace {

ModelPoint as_model(const Vec3& p, double k) { return {chart_for(Curvature(k)), p}; }

py::object json_to_python(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict angle_dict(const AngleEstimate& e) {
  py::list levels;
  for (const LevelBracket& b : e.per_level) {
    levels.append(py::dict("eps"_a = b.eps, "sup"_a = b.sup, "inf"_a = b.inf));
  }
  return py::dict("upper"_a = e.upper, "lower"_a = e.lower, "error_bound"_a = e.error_bound,
                  "k"_a = e.k_used, "levels"_a = levels);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Comparison geometry kernels, metric spaces and angle estimators";

  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

  m.def("diameter", [](double k) { return diameter(Curvature(k)); }, "k"_a);
  m.def("model_distance",
        [](const Vec3& p, const Vec3& q, double k) {
          return model_distance(as_model(p, k), as_model(q, k), Curvature(k));
        },
        "p"_a, "q"_a, "k"_a);
  m.def("vertex_angle",
        [](const Vec3& a, const Vec3& b, const Vec3& c, double k) {
          return vertex_angle(as_model(a, k), as_model(b, k), as_model(c, k), Curvature(k));
        },
        "a"_a, "b"_a, "c"_a, "k"_a);
  m.def("model_exp",
        [](double azimuth, double r, double k) {
          const Curvature kk(k);
          return model_exp(model_origin(kk), azimuth, r, kk).coords;
        },
        "azimuth"_a, "r"_a, "k"_a, "Point at distance r from the chart origin.");
  m.def("comparison_angle",
        [](double a, double b, double c, double k) { return comparison_angle({a, b, c}, Curvature(k)); },
        "a"_a, "b"_a, "c"_a, "k"_a);
  m.def("admissibility",
        [](double a, double b, double c, double k) {
          switch (admissibility({a, b, c}, Curvature(k))) {
            case Admissibility::strict:
              return "strict";
            case Admissibility::loose:
              return "loose";
            default:
              return "inadmissible";
          }
        },
        "a"_a, "b"_a, "c"_a, "k"_a);
  m.def("embed_triangle",
        [](double a, double b, double c, double k) {
          const ComparisonTriangle t = embed_triangle({a, b, c}, Curvature(k));
          return std::vector<Vec3>{t.vertices[0].coords, t.vertices[1].coords, t.vertices[2].coords};
        },
        "a"_a, "b"_a, "c"_a, "k"_a);

  py::class_<MetricSpace, std::shared_ptr<MetricSpace>>(m, "Space")
      .def_property_readonly("kind", &MetricSpace::kind)
      .def("describe", &MetricSpace::describe)
      .def("distance", &MetricSpace::distance, "p"_a, "q"_a)
      .def("certified_error", &MetricSpace::certified_error)
      .def("__repr__", [](const MetricSpace& s) { return "<Space " + s.describe() + ">"; });

  m.def("model_space", [](double k) { return std::const_pointer_cast<MetricSpace>(model_space(k)); },
        "k"_a);
  m.def("taxicab_plane", [] { return std::const_pointer_cast<MetricSpace>(taxicab_plane()); });
  m.def("cube_surface",
        [](double edge, int level) {
          return std::const_pointer_cast<MetricSpace>(build_cube_surface(edge, level));
        },
        "edge"_a = 1.0, "level"_a = 3);

  py::class_<SampledPath>(m, "Path")
      .def(py::init([](std::shared_ptr<MetricSpace> space, const std::vector<std::pair<double, Vec3>>& s) {
             std::vector<PathSample> samples;
             for (const auto& [t, p] : s) samples.push_back({t, p});
             return SampledPath(space, std::move(samples));
           }),
           "space"_a, "samples"_a, "Samples as (t, point) pairs with increasing t.")
      .def_property_readonly("t_begin", &SampledPath::t_begin)
      .def_property_readonly("t_end", &SampledPath::t_end)
      .def("__len__", &SampledPath::size)
      .def("point_at", &SampledPath::point_at, "t"_a)
      .def("piece", &SampledPath::piece, "start"_a, "stop"_a)
      .def("samples", [](const SampledPath& p) {
        std::vector<std::pair<double, Vec3>> out;
        for (const PathSample& s : p.samples()) out.emplace_back(s.t, s.point);
        return out;
      });

  m.def("path_length", &path_length, "path"_a);
  m.def("arc_length_reparam", &arc_length_reparam, "path"_a);
  m.def("shortest_path",
        [](std::shared_ptr<MetricSpace> space, const Vec3& p, const Vec3& q, double resolution) {
          return shortest_path(space, p, q, resolution);
        },
        "space"_a, "p"_a, "q"_a, "resolution"_a = 1.0 / 64);

  m.def("estimate_angles",
        [](const SampledPath& gamma, const SampledPath& eta, double k) {
          return angle_dict(estimate_angles(gamma, eta, Curvature(k)));
        },
        "gamma"_a, "eta"_a, "k"_a = 0.0);

  m.def("first_variation_check",
        [](const SampledPath& gamma, const std::vector<Vec3>& set, double k) {
          const VariationReport r = first_variation_check(gamma, CompactSet(gamma.space(), set), Curvature(k));
          return py::dict("ell0"_a = r.ell0, "angle_min"_a = r.angle_min, "target"_a = r.target,
                          "limit_estimate"_a = r.limit_estimate, "residual"_a = r.residual,
                          "tolerance"_a = r.tolerance, "pass"_a = r.pass);
        },
        "gamma"_a, "set"_a, "k"_a = 0.0);

  m.def("curvature_bound_test",
        [](std::shared_ptr<MetricSpace> space, const Vec3& center, double radius, double k,
           const std::string& direction, std::size_t trials, std::uint64_t seed) {
          if (direction != "above" && direction != "below") {
            throw py::value_error("direction must be 'above' or 'below'");
          }
          const CurvatureBoundReport r = curvature_bound_test(
              space, center, radius, Curvature(k),
              direction == "above" ? BoundDirection::above : BoundDirection::below, trials, seed);
          return py::dict("trials"_a = r.trials, "violations"_a = r.violations,
                          "skipped"_a = r.skipped, "max_deviation"_a = r.max_deviation,
                          "worst_excess"_a = r.worst_excess, "holds"_a = r.holds);
        },
        "space"_a, "center"_a, "radius"_a, "k"_a, "direction"_a, "trials"_a = 1000, "seed"_a = 0);

  m.def("run_scenario",
        [](const std::string& config, const std::string& scenario_dir, std::optional<std::uint64_t> seed,
           std::optional<std::string> out) {
          const Report r = run_scenario(resolve_scenario(config, scenario_dir), seed);
          if (out) emit_tables(r, *out);
          py::dict d = json_to_python(r.to_json());
          d["exit_code"] = r.exit_code();
          return d;
        },
        "config"_a, "scenario_dir"_a, "seed"_a = py::none(), "out"_a = py::none(),
        "Runs a scenario file (or bundled scenario name) and returns the report.");
  m.def("bundled_scenarios", [](const std::string& dir) { return bundled_scenarios(dir); }, "scenario_dir"_a);
}
