#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "branchlab/asymptotics.hpp"
#include "branchlab/branching.hpp"
#include "branchlab/branching_cone.hpp"
#include "branchlab/wire.hpp"

namespace py = pybind11;
using namespace branchlab;

namespace {

Embedding embedding_from(const std::string& spec) { return parse_embedding_spec(spec); }

py::dict dims_py(const std::string& spec) {
  auto e = embedding_from(spec);
  auto d = space_dims(e);
  py::dict out;
  out["dim_X"] = d.dim_X;
  out["dim_G"] = d.dim_G;
  out["n"] = d.n;
  return out;
}

py::dict branch_py(const std::string& spec, const std::string& lambda) {
  auto e = embedding_from(spec);
  auto dec = branch(e, parse_weight(lambda, e.source->rank()));
  py::dict out;
  for (const auto& [mu, m] : dec.table) out[py::str(format_weight(mu))] = m;
  return out;
}

long long mult_py(const std::string& spec, const std::string& mu, const std::string& lambda) {
  auto e = embedding_from(spec);
  return branching_multiplicity(e, parse_weight(mu, e.target->rank()),
                                parse_weight(lambda, e.source->rank()));
}

py::object json_to_py(const nlohmann::ordered_json& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

py::object cone_py(const std::string& spec, int level) {
  auto e = embedding_from(spec);
  return json_to_py(eff_cone_report(branching_cone(e, level)));
}

py::object stretch_py(const std::string& spec, const std::string& mu, const std::string& lambda,
                      int K) {
  auto e = embedding_from(spec);
  auto s = stretch_sequence(e, parse_weight(mu, e.target->rank()),
                            parse_weight(lambda, e.source->rank()), K);
  return json_to_py(stretch_to_json(e, s));
}

py::object volume_py(const std::string& spec, const std::string& mu, const std::string& lambda,
                     int K) {
  auto e = embedding_from(spec);
  auto v = asymptotic_volume(e, parse_weight(mu, e.target->rank()),
                             parse_weight(lambda, e.source->rank()), K);
  return json_to_py(volume_to_json(e, v));
}

py::dict root_system_py(const std::string& type_spec) {
  auto rs = build_root_system(type_spec);
  py::dict out;
  out["name"] = rs->name();
  out["rank"] = rs->rank();
  out["positive_roots"] = rs->num_positive_roots();
  out["dim_group"] = rs->dim_group();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact branching multiplicities, branching cones, and stretched-multiplicity asymptotics";

  py::register_exception<Error>(m, "BranchlabError");

  m.def("root_system", &root_system_py, py::arg("type_spec"),
        "Cartan data summary for a type spec such as 'A2' or 'A1xA1'");
  m.def("dims", &dims_py, py::arg("embedding"),
        "Flag-variety dimension, subgroup dimension, and quotient dimension n");
  m.def("branch", &branch_py, py::arg("embedding"), py::arg("lambda_"),
        "Decomposition of the restricted irreducible as {weight: multiplicity}");
  m.def("mult", &mult_py, py::arg("embedding"), py::arg("mu"), py::arg("lambda_"),
        "Single branching multiplicity");
  m.def("cone", &cone_py, py::arg("embedding"), py::arg("level") = 4,
        "Stabilized branching-cone sample with pointedness/full-dimensionality flags");
  m.def("stretch", &stretch_py, py::arg("embedding"), py::arg("mu"), py::arg("lambda_"),
        py::arg("K") = 12, "Stretched multiplicity sequence with quasi-period and degree");
  m.def("volume", &volume_py, py::arg("embedding"), py::arg("mu"), py::arg("lambda_"),
        py::arg("K") = 12, "Asymptotic fiber volume at an interior point");
}
