#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dpgraph/cli.hpp"
#include "dpgraph/enumeration.hpp"
#include "dpgraph/io.hpp"
#include "dpgraph/search.hpp"
#include "dpgraph/surgery.hpp"
#include "dpgraph/walk_classes.hpp"

namespace py = pybind11;
using namespace dpgraph;

namespace {

DPSystem system_of(const std::string& text) { return build_system(parse_graph_json(text)); }

EdgeMultiset multiset_of(const std::string& text) { return scale_to_integer(parse_length_list(text)); }

SearchOptions options_of(int jobs, bool multi_point, int max_edges) {
  SearchOptions o;
  o.jobs = jobs;
  o.multi_point = multi_point;
  o.enumeration.max_edges = max_edges;
  return o;
}

}  // namespace

// Everything crosses the boundary as JSON text; the Python package decodes it.
PYBIND11_MODULE(_core, m) {
  m.doc() = "Dynamic point systems on metric graphs";
  m.attr("__version__") = version();

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidGraph>(m, "InvalidGraph", PyExc_ValueError);
  py::register_exception<EnumerationCapExceeded>(m, "EnumerationCapExceeded", PyExc_ValueError);
  py::register_exception<SimulationLimitExceeded>(m, "SimulationLimitExceeded", PyExc_RuntimeError);
  py::register_exception<OracleMismatch>(m, "OracleMismatch", PyExc_RuntimeError);

  m.def("version", &version);

  m.def(
      "simulate",
      [](const std::string& graph, Tick max_ticks) {
        const DPSystem s = system_of(graph);
        py::gil_scoped_release nogil;
        return timeline_to_json(simulate(s, SimOptions{max_ticks}), s.graph).dump();
      },
      py::arg("graph"), py::arg("max_ticks") = 0);

  m.def("classes", [](const std::string& graph) {
    const DPSystem s = system_of(graph);
    return classes_to_json(s.graph, stabilization_oracle(s)).dump();
  });

  m.def(
      "search",
      [](const std::string& edges, int jobs, bool multi_point, int max_edges) {
        const EdgeMultiset e = multiset_of(edges);
        py::gil_scoped_release nogil;
        return search_to_json(lstdp_search(e, options_of(jobs, multi_point, max_edges))).dump();
      },
      py::arg("edges"), py::arg("jobs") = 1, py::arg("multi_point") = false, py::arg("max_edges") = 6);

  m.def(
      "enumerate",
      [](const std::string& edges, bool connected_only, int max_edges) {
        EnumerationOptions o;
        o.connected_only = connected_only;
        o.max_edges = max_edges;
        std::vector<std::string> out;
        enumerate_graphs(multiset_of(edges), o, [&](const MetricGraph& g) { out.push_back(graph_to_json(g).dump()); });
        return out;
      },
      py::arg("edges"), py::arg("connected_only") = true, py::arg("max_edges") = 7);

  m.def("verify_theorem", [](const std::string& edges, int jobs) {
    const EdgeMultiset e = multiset_of(edges);
    py::gil_scoped_release nogil;
    return theorem_to_json(verify_theorem(e, options_of(jobs, false, 6))).dump();
  }, py::arg("edges"), py::arg("jobs") = 1);

  m.def("verify_corollary", [](const std::string& graph) {
    return corollary_to_json(verify_corollary(system_of(graph))).dump();
  });
  m.def("to_bead", [](const std::string& graph) { return surgery_to_json(to_bead(system_of(graph))).dump(); });
  m.def("reduce_degrees",
        [](const std::string& graph) { return surgery_to_json(reduce_degrees(system_of(graph))).dump(); });
  m.def("render", [](const std::string& graph) {
    const DPSystem s = system_of(graph);
    return render_dot(s.graph, s.points);
  });

  m.def("run", [](std::vector<std::string> args) {
    args.insert(args.begin(), "dpgraph");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
