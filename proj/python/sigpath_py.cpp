#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sigpath/error.hpp"
#include "sigpath/hyperbolic.hpp"
#include "sigpath/rtree.hpp"
#include "sigpath/signature.hpp"
#include "sigpath/treelike.hpp"
#include "sigpath/words.hpp"

namespace py = pybind11;
using namespace sigpath;

namespace {

using Points = std::vector<std::vector<double>>;

PiecewiseLinearPath to_path(const Points& pts) { return PiecewiseLinearPath(pts); }

// Levels 0..depth of S(p), each flattened in lexicographic word order.
std::vector<std::vector<double>> signature_levels(const Points& pts, int depth) {
  const auto s = path_signature(to_path(pts), depth);
  std::vector<std::vector<double>> out;
  for (int k = 0; k <= depth; ++k) out.emplace_back(s.level(k).begin(), s.level(k).end());
  return out;
}

}  // namespace

PYBIND11_MODULE(_sigpath, m) {
  m.doc() = "Path signatures, hyperbolic development and tree-like reduction";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("signature", &signature_levels, py::arg("points"), py::arg("depth"));
  m.def("signature_coefficient",
        [](const Points& pts, const std::vector<int>& word) {
          return path_signature(to_path(pts), static_cast<int>(word.size())).coefficient(word);
        },
        py::arg("points"), py::arg("word"));
  m.def("level_norms",
        [](const Points& pts, int max_level, const std::string& method, int substeps) {
          LevelNormOptions o;
          if (method == "dense") {
            o.method = NormMethod::dense;
          } else if (method == "kernel") {
            o.method = NormMethod::kernel;
          } else if (method != "auto") {
            throw DomainError("method must be auto, dense or kernel");
          }
          o.substeps = substeps;
          return signature_level_norms(to_path(pts), max_level, o);
        },
        py::arg("points"), py::arg("max_level"), py::arg("method") = "auto", py::arg("substeps") = 1);

  m.def("chord_distance", [](const Points& pts, double alpha) { return chord_distance(to_path(pts), alpha); },
        py::arg("points"), py::arg("alpha"));
  m.def("length_estimate", [](const std::vector<double>& b, double alpha) { return length_recovery(b, alpha).estimate; },
        py::arg("level_norms"), py::arg("alpha"));
  m.def("min_nonzero_level",
        [](double l, double lipschitz) {
          return min_nonzero_level(l, SmoothnessProfile::lipschitz(lipschitz), EstimateConstants{}).N;
        },
        py::arg("length"), py::arg("lipschitz"));

  m.def("free_reduce", [](const std::string& w) { return to_string(free_reduce(parse_word(w))); }, py::arg("word"));
  m.def("certify_word",
        [](const std::string& w) {
          const Word word = parse_word(w);
          const Certificate c = word.alphabet_size() == 2 ? triviality_certificate(word) : certify_d_dim(word);
          return py::make_tuple(c.trivial, c.depth);
        },
        py::arg("word"));

  m.def("reduce_path", [](const Points& pts) { return reduce_path(to_path(pts)).points(); }, py::arg("points"));
  m.def("is_tree_like", [](const Points& pts, int depth) { return is_tree_like(to_path(pts), depth); },
        py::arg("points"), py::arg("depth") = 6);
  m.def("tree_distance",
        [](const std::vector<double>& times, const std::vector<double>& values, double s, double t) {
          return tree_pseudometric(HeightFunction(times, values), s, t);
        },
        py::arg("times"), py::arg("values"), py::arg("s"), py::arg("t"));
}
