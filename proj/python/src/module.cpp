#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skinmorph/classification.hpp"
#include "skinmorph/error.hpp"
#include "skinmorph/evaluation.hpp"
#include "skinmorph/morphology.hpp"
#include "skinmorph/params_io.hpp"
#include "skinmorph/pipelines.hpp"
#include "skinmorph/training.hpp"

namespace py = pybind11;
using namespace skinmorph;

namespace {

using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

// Any 2-D array; nonzero is foreground.
BinaryMask to_mask(const py::array& in) {
  if (in.ndim() != 2) throw py::value_error("mask must be 2-D, got " + std::to_string(in.ndim()) + " dimensions");
  const auto a = ByteArray::ensure(in.attr("astype")("bool"));
  if (!a) throw py::type_error("mask must be convertible to a boolean array");
  const int h = static_cast<int>(a.shape(0)), w = static_cast<int>(a.shape(1));
  BinaryMask m(w, h);
  const auto v = a.unchecked<2>();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (v(y, x)) m.set(x, y, true);
  return m;
}

py::array_t<bool> to_array(const BinaryMask& m) {
  py::array_t<bool> out({m.height(), m.width()});
  auto v = out.mutable_unchecked<2>();
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) v(y, x) = m.get(x, y);
  return out;
}

Alternative alternative_from(const std::string& s) {
  if (s == "two-sided") return Alternative::TwoSided;
  if (s == "greater") return Alternative::Greater;
  if (s == "less") return Alternative::Less;
  throw py::value_error("alternative must be two-sided, greater or less, got '" + s + "'");
}

py::dict features_dict(const FeatureSet& f) {
  py::dict d;
  d["sr"] = f.sr;
  d["cc_eroded"] = f.cc_eroded;
  d["bsr_eroded"] = f.bsr_eroded;
  d["cc_cleaned"] = f.cc_cleaned;
  return d;
}

}  // namespace

PYBIND11_MODULE(_skinmorph, m) {
  m.doc() = "Rule-based morphological post-processing of binary skin masks.";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<ThresholdParams>(m, "ThresholdParams")
      .def(py::init([](double a1, double a2, int b1, int b2, double c1) {
             ThresholdParams p{a1, a2, b1, b2, c1};
             p.validate();
             return p;
           }),
           py::arg("a1") = 0.3, py::arg("a2") = 0.06, py::arg("b1") = 10, py::arg("b2") = 40,
           py::arg("c1") = 0.25)
      .def_readwrite("a1", &ThresholdParams::a1)
      .def_readwrite("a2", &ThresholdParams::a2)
      .def_readwrite("b1", &ThresholdParams::b1)
      .def_readwrite("b2", &ThresholdParams::b2)
      .def_readwrite("c1", &ThresholdParams::c1)
      .def(py::self == py::self)
      .def("__repr__", [](const ThresholdParams& p) { return "ThresholdParams" + to_string(p); });

  m.def("load_params", [](const std::string& path) { return load_params(path); }, py::arg("path"));
  m.def("format_params", [](const ThresholdParams& p) { return format_params(p); }, py::arg("params"));

  m.def(
      "erode", [](const py::array& a, int r) { return to_array(erode(to_mask(a), make_disk(r))); },
      py::arg("mask"), py::arg("radius"));
  m.def(
      "dilate", [](const py::array& a, int r) { return to_array(dilate(to_mask(a), make_disk(r))); },
      py::arg("mask"), py::arg("radius"));
  m.def(
      "fill_holes",
      [](const py::array& a, std::optional<std::size_t> max_area) {
        return to_array(fill_holes(to_mask(a), max_area));
      },
      py::arg("mask"), py::arg("max_area") = py::none());
  m.def(
      "remove_small_components",
      [](const py::array& a, std::size_t p) { return to_array(remove_small_components(to_mask(a), p)); },
      py::arg("mask"), py::arg("max_area"));

  m.def(
      "features", [](const py::array& a) { return features_dict(compute_features(to_mask(a))); },
      py::arg("mask"));
  m.def(
      "classify",
      [](const py::array& a, const ThresholdParams& p) {
        const BinaryMask bw = to_mask(a);
        return std::string(1, to_char(assign_class(compute_features(bw), p)));
      },
      py::arg("mask"), py::arg("params") = ThresholdParams{});
  m.def(
      "postprocess",
      [](const py::array& a, const ThresholdParams& p) {
        const auto r = postprocess_adaptive(to_mask(a), p);
        return py::make_tuple(to_array(r.mask), std::string(1, to_char(r.cls)));
      },
      py::arg("mask"), py::arg("params") = ThresholdParams{},
      "Adaptive post-processing; returns (mask, class).");
  m.def(
      "postprocess_baseline", [](const py::array& a) { return to_array(postprocess_baseline(to_mask(a))); },
      py::arg("mask"));

  m.def(
      "confusion",
      [](const py::array& pred, const py::array& truth) {
        const BinaryMask p = to_mask(pred), t = to_mask(truth);
        if (!p.same_shape(t)) throw py::value_error("prediction and truth differ in shape");
        const auto c = confusion(p, t);
        return py::make_tuple(c.tp, c.fp, c.fn, c.tn);
      },
      py::arg("pred"), py::arg("truth"), "Returns (tp, fp, fn, tn).");
  m.def(
      "f1",
      [](std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) { return f1(ConfusionCounts{tp, fp, fn, 0}); },
      py::arg("tp"), py::arg("fp"), py::arg("fn"));
  m.def(
      "average_precision",
      [](const std::vector<double>& scores, const std::vector<bool>& positive) {
        if (scores.size() != positive.size()) throw py::value_error("scores and labels differ in length");
        std::vector<ScoredLabel> items;
        for (std::size_t i = 0; i < scores.size(); ++i) items.push_back({scores[i], positive[i]});
        return average_precision(items);
      },
      py::arg("scores"), py::arg("positive"));
  m.def(
      "wilcoxon",
      [](const std::vector<double>& x, const std::vector<double>& y, const std::string& alternative) {
        const auto r = wilcoxon_signed_rank(x, y, alternative_from(alternative));
        py::dict d;
        d["p"] = r.p_value;
        d["w_plus"] = r.w_plus;
        d["w_minus"] = r.w_minus;
        d["n"] = r.n;
        d["exact"] = r.exact;
        return d;
      },
      py::arg("x"), py::arg("y"), py::arg("alternative") = "two-sided");
  m.def(
      "global_rank",
      [](const std::vector<std::vector<double>>& table) {
        const auto g = global_rank(table);
        return py::make_tuple(g.mean_rank, g.rank);
      },
      py::arg("table"), "Rows are datasets, columns methods; returns (mean_rank, rank).");

  m.def(
      "grid_search",
      [](const std::vector<std::pair<py::array, py::array>>& pairs, std::optional<std::string> grid_path,
         int jobs) {
        std::vector<TrainingSample> corpus;
        for (const auto& [p, t] : pairs) corpus.push_back({to_mask(p), to_mask(t), "py"});
        const GridSpec grid = grid_path ? load_grid(*grid_path) : GridSpec::default_grid();
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = grid_search(grid, corpus, PipelineConfig{}, jobs);
        }
        return py::make_tuple(r.params, r.score);
      },
      py::arg("pairs"), py::arg("grid") = py::none(), py::arg("jobs") = 1,
      "Searches thresholds on (prediction, truth) pairs; returns (params, f1).");
}
