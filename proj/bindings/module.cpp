// Thin python bindings: mesh generation, the analysis pipeline (JSON out),
// the cylinder oracle, and operator matrix export as numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hodgedtn/generators.hpp"
#include "hodgedtn/report.hpp"

namespace py = pybind11;
using namespace hodgedtn;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dirichlet-to-Neumann operators for differential forms";

    m.def(
        "make_mesh",
        [](const std::string& name, int resolution) {
            int res = resolution > 0 ? resolution : default_resolution(name);
            return write_mesh_text(make_mesh(name, res));
        },
        py::arg("name"), py::arg("resolution") = 0,
        "Generate a built-in mesh and return it in the text format.");

    m.def(
        "analyze",
        [](const std::string& mesh_text, bool identities, double rank_threshold,
           bool timings) {
            AnalyzeOptions opts;
            opts.identities = identities;
            opts.rank_threshold = rank_threshold;
            opts.timings = timings;
            return analyze_mesh(load_mesh_text(mesh_text), opts).dump(2);
        },
        py::arg("mesh_text"), py::arg("identities") = false,
        py::arg("rank_threshold") = 1e3, py::arg("timings") = false,
        "Run the full pipeline on a mesh (text format); returns JSON.");

    m.def(
        "oracle",
        [](int m_max, double L) { return oracle_report(m_max, L).dump(2); },
        py::arg("m_max") = 20, py::arg("L") = 1.0,
        "Cylinder oracle report as JSON.");

    m.def(
        "operator_matrix",
        [](const std::string& mesh_text, const std::string& label) {
            return export_operator(load_mesh_text(mesh_text), label);
        },
        py::arg("mesh_text"), py::arg("label"),
        "Assemble one named boundary operator matrix (e.g. 'Phi0').");
}
