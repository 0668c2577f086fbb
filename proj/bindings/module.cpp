#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <vector>

#include "hslink/analysis.hpp"
#include "hslink/config.hpp"
#include "hslink/errors.hpp"
#include "hslink/families.hpp"
#include "hslink/geometry.hpp"
#include "hslink/hodge.hpp"
#include "hslink/hopf.hpp"
#include "hslink/stationarity.hpp"

namespace py = pybind11;
using namespace hslink;

namespace {

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<long>(v.size()));
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::Vector3d to_vector3(const std::vector<double>& v,
                           const char* label) {
  if (v.size() != 3)
    throw ConfigError(std::string(label) + " needs exactly 3 entries");
  return Eigen::Vector3d(v[0], v[1], v[2]);
}

CatalogParams params_from_kwargs(const py::kwargs& kwargs) {
  CatalogParams params;
  for (const auto& item : kwargs) {
    const std::string key = py::cast<std::string>(item.first);
    if (py::isinstance<py::str>(item.second)) {
      params.strings[key] = py::cast<std::string>(item.second);
    } else {
      params.vectors[key] = py::cast<std::vector<double>>(item.second);
    }
  }
  return params;
}

/// Shared-ownership wrapper so python object lifetimes are simple.
struct Link {
  std::shared_ptr<Immersion> imm;

  Jet jet_at(const std::vector<double>& t) const {
    return imm->jet(to_eigen(t), 2);
  }
};

py::dict json_to_py(const nlohmann::json& j) {
  const py::object loads = py::module_::import("json").attr("loads");
  return loads(py::str(j.dump()));
}

py::dict point_to_py(const LegendrianPoint& p) {
  py::dict d;
  d["location"] = py::make_tuple(p.location.x(), p.location.y());
  d["residual"] = p.residual;
  d["refined"] = p.refined;
  d["multiplicity"] = p.multiplicity;
  d["index_prju"] = p.index_prju;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "invariants of immersed links in odd-dimensional spheres";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<NumericalError>(m, "NumericalError");

  py::class_<Link>(m, "Link")
      .def_property_readonly(
          "name", [](const Link& l) { return l.imm->name(); })
      .def_property_readonly(
          "link_dim", [](const Link& l) { return l.imm->link_dim(); })
      .def_property_readonly(
          "complex_dim", [](const Link& l) { return l.imm->complex_dim(); })
      .def_property_readonly(
          "sphere_dim",
          [](const Link& l) { return l.imm->ambient_dim() - 1; })
      .def_property_readonly(
          "genus", [](const Link& l) { return l.imm->genus(); })
      .def("position",
           [](const Link& l, const std::vector<double>& t) {
             return to_vector(l.jet_at(t).u);
           },
           py::arg("t"))
      .def("contact_form",
           [](const Link& l, const std::vector<double>& t) {
             return to_vector(contact_form(l.jet_at(t)));
           },
           py::arg("t"))
      .def("isotropy_deviation",
           [](const Link& l, const std::vector<double>& t) {
             return isotropy_deviation(l.jet_at(t));
           },
           py::arg("t"))
      .def("isotropy_residual",
           [](const Link& l, const std::vector<double>& t) {
             return isotropy_residual(l.jet_at(t));
           },
           py::arg("t"))
      .def("stationarity",
           [](const Link& l, const std::vector<double>& t) {
             const StationarityResidual r =
                 stationarity_residuals(*l.imm, to_eigen(t));
             return py::make_tuple(r.S1, r.S2);
           },
           py::arg("t"),
           "Hamiltonian stationarity residuals (S1, S2); both vanish on "
           "HS links")
      .def("sphere_mean_curvature",
           [](const Link& l, const std::vector<double>& t) {
             return to_vector(sphere_mean_curvature(l.jet_at(t)));
           },
           py::arg("t"))
      .def("hopf_function",
           [](const Link& l, const std::vector<double>& t) {
             if (l.imm->link_dim() != 2)
               throw DomainError("hopf function needs a surface link");
             return hopf_function(l.jet_at(t));
           },
           py::arg("t"))
      .def("lagrangian_angle",
           [](const Link& l, const std::vector<double>& t) {
             return lagrangian_angle(l.jet_at(t));
           },
           py::arg("t"))
      .def("__repr__", [](const Link& l) {
        return "<Link " + l.imm->name() + " (" +
               std::to_string(l.imm->link_dim()) + "d in S^" +
               std::to_string(l.imm->ambient_dim() - 1) + ")>";
      });

  m.def(
      "make",
      [](const std::string& name, const py::kwargs& kwargs) {
        return Link{make_catalog_immersion(name, params_from_kwargs(kwargs))};
      },
      py::arg("name"),
      "Builds a catalog immersion, e.g. make('homogeneous_torus', "
      "q=[1/6, 1/3, 1/2], a=[2, -1, 0], b=[1, 1, -1])");

  m.def("catalog", [] {
    py::list entries;
    for (const CatalogEntry& entry : catalog_entries()) {
      py::dict d;
      d["name"] = entry.name;
      d["params"] = entry.params_help;
      entries.append(d);
    }
    return entries;
  });

  m.def(
      "find_legendrian_points",
      [](const Link& link, int resolution) {
        if (link.imm->link_dim() != 2)
          throw DomainError("the scan needs a surface link");
        GridSpec grid;
        grid.res = {resolution, resolution};
        const LegendrianScan scan =
            find_legendrian_points(*link.imm, grid, ScanOptions{});
        py::dict d;
        d["everywhere_legendrian"] = scan.everywhere_legendrian;
        d["f_min"] = scan.min_f;
        d["f_max"] = scan.max_f;
        py::list points;
        for (const LegendrianPoint& p : scan.points)
          points.append(point_to_py(p));
        d["points"] = points;
        return d;
      },
      py::arg("link"), py::arg("resolution") = 64,
      "Scans the deviation f for isolated zeros and their indices");

  m.def(
      "classify",
      [](const std::vector<double>& q, const std::vector<double>& a,
         const std::vector<double>& b) {
        HomogeneousTorusParams params;
        params.q = to_vector3(q, "q");
        params.a = to_vector3(a, "a");
        params.b = to_vector3(b, "b");
        const FamilyClassification c = classify_family_member(params);
        py::dict d;
        d["isotropic"] = c.isotropic;
        d["legendrian"] = c.legendrian;
        d["minimal"] = c.minimal;
        d["f_value"] = c.f_value;
        d["hbar_norm2"] = c.hbar_norm2;
        d["lambda"] = py::make_tuple(c.lambda(0), c.lambda(1), c.lambda(2));
        return d;
      },
      py::arg("q"), py::arg("a"), py::arg("b"),
      "Classifies a homogeneous torus by weights q and lattice "
      "directions a, b");

  m.def(
      "search",
      [](const std::vector<double>& q, const std::vector<double>& a,
         const std::vector<double>& b, bool legendrian, bool minimal,
         bool optimize_weights, int max_iterations) {
        HomogeneousTorusParams init;
        init.q = to_vector3(q, "q");
        init.a = to_vector3(a, "a");
        init.b = to_vector3(b, "b");
        SearchOptions opts;
        opts.targets = {legendrian, minimal};
        opts.optimize_weights = optimize_weights;
        opts.max_iterations = max_iterations;
        const SearchResult result = search_legendrian_hs(init, opts);
        py::dict d;
        d["converged"] = result.converged;
        d["residual"] = result.residual;
        d["iterations"] = result.iterations;
        d["weights_snapped"] = result.weights_snapped;
        d["q"] = to_vector(result.params.q);
        d["a"] = to_vector(result.params.a);
        d["b"] = to_vector(result.params.b);
        return d;
      },
      py::arg("q"), py::arg("a"), py::arg("b"),
      py::arg("legendrian") = true, py::arg("minimal") = false,
      py::arg("optimize_weights") = false, py::arg("max_iterations") = 1000,
      "Damped least-squares search over the homogeneous torus family");

  m.def(
      "analyze",
      [](const std::string& config_text) {
        const AnalysisOutcome out = run_analysis(parse_config(config_text));
        py::dict d;
        d["report"] = json_to_py(out.report);
        py::dict files;
        for (const auto& [name, content] : out.files)
          files[py::str(name)] = content;
        d["files"] = files;
        d["exit_code"] = out.exit_code;
        return d;
      },
      py::arg("config_text"),
      "Runs the full analysis pipeline on config text; returns the "
      "report, rendered artifacts, and exit code");
}
