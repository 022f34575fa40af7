#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridweaver/json_io.hpp"

namespace py = pybind11;
using namespace gw;

namespace {

LazyGraph graph_of(const std::string& spec) { return make_graph(spec); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "lazy infinite-graph subdivisions, minors and certificates";

    py::register_exception<Error>(m, "GridweaverError");

    m.def("neighbors", [](const std::string& graph, const Token& v) {
        return graph_of(graph).neighbors(v);
    });
    m.def("distance", [](const std::string& graph, const Token& u, const Token& v, int cap) {
        return dist(graph_of(graph), u, v, cap);
    });
    m.def("ball_size", [](const std::string& graph, const Token& center, int radius) {
        LazyGraph g = graph_of(graph);
        return ball(g, center, radius).vertices.size();
    });
    m.def(
        "weave",
        [](const std::string& graph, int rows, int cols) {
            LazyGraph g = graph_of(graph);
            return to_json(weave(g, rows, cols)).dump();
        },
        py::arg("graph"), py::arg("rows"), py::arg("cols"));
    m.def("verify_subdivision", [](const std::string& graph, const std::string& json_text) {
        LazyGraph g = graph_of(graph);
        SubdivisionMap sm = subdivision_from_json(nlohmann::json::parse(json_text));
        return to_json(verify_subdivision(g, sm)).dump();
    });
    m.def("verify_minor", [](const std::string& graph, const std::string& json_text) {
        LazyGraph g = graph_of(graph);
        MinorModel mm = minor_from_json(nlohmann::json::parse(json_text));
        return to_json(verify_minor(g, mm)).dump();
    });
    m.def(
        "diverging_pair",
        [](const std::string& graph, int scale, int effort) {
            LazyGraph g = graph_of(graph);
            DivergingPair dp = diverging_pair(g, scale, effort);
            nlohmann::json j{{"r1", to_json(dp.r1)}, {"r2", to_json(dp.r2)},
                             {"cert", to_json(dp.cert)}};
            return j.dump();
        },
        py::arg("graph"), py::arg("scale"), py::arg("effort") = 10000);
    m.def("chain_minor", [](int small, int big, int length) {
        return to_json(chain_minor(small, big, length)).dump();
    });
    m.def("clique_minor_cubic", [](int n) { return to_json(clique_minor_cubic(n)).dump(); });
}
