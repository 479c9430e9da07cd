// Python bindings for the core operations. Class labels and algorithm
// names cross the boundary as strings; matrices cross as numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "labelguard/classifiers.hpp"
#include "labelguard/errors.hpp"
#include "labelguard/experiment.hpp"
#include "labelguard/features.hpp"
#include "labelguard/filter.hpp"
#include "labelguard/signal.hpp"
#include "labelguard/wfdb.hpp"

namespace py = pybind11;
using namespace labelguard;

namespace {

ClassLabel label_from_string(const std::string& text) {
  const auto label = parse_label(text);
  if (!label) throw ArgumentError("unknown class label '" + text + "'");
  return *label;
}

std::vector<std::string> labels_to_strings(
    const std::vector<ClassLabel>& labels) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (ClassLabel label : labels) out.emplace_back(to_string(label));
  return out;
}

std::vector<ClassLabel> labels_from_strings(
    const std::vector<std::string>& names) {
  std::vector<ClassLabel> out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back(label_from_string(name));
  return out;
}

AlgorithmKind algorithm_from_string(const std::string& text) {
  const auto kind = parse_algorithm(text);
  if (!kind) throw ArgumentError("unknown classifier '" + text + "'");
  return *kind;
}

struct PyClassifier {
  ClassifierPtr model;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Label-noise filtering for annotated beat datasets";

  const auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ArgumentError>(m, "ArgumentError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<IoError>(m, "IoError", base);
  py::register_exception<DataError>(m, "DataError", base);

  py::class_<SampleSet>(m, "SampleSet")
      .def(py::init<>())
      .def_readwrite("x", &SampleSet::x)
      .def_property(
          "labels",
          [](const SampleSet& s) { return labels_to_strings(s.labels); },
          [](SampleSet& s, const std::vector<std::string>& names) {
            s.labels = labels_from_strings(names);
          })
      .def_readwrite("ids", &SampleSet::ids)
      .def_readwrite("noise_flags", &SampleSet::noise_flags)
      .def("__len__", &SampleSet::size)
      .def("dim", &SampleSet::dim)
      .def("validate", &SampleSet::validate)
      .def("class_counts", [](const SampleSet& s) {
        py::dict counts;
        const auto raw = s.class_counts();
        for (int c = 0; c < kNumClasses; ++c)
          counts[py::str(std::string(to_string(kAllLabels[c])))] = raw[c];
        return counts;
      });

  py::class_<VoteTally>(m, "VoteTally")
      .def_readonly("ids", &VoteTally::ids)
      .def_readonly("counts", &VoteTally::counts);

  py::class_<FilterReport>(m, "FilterReport")
      .def_readonly("anm", &FilterReport::anm)
      .def_readonly("inm", &FilterReport::inm)
      .def_readonly("ainm", &FilterReport::ainm)
      .def_readonly("p_d", &FilterReport::p_d)
      .def_readonly("p_fa", &FilterReport::p_fa);

  py::class_<PyClassifier>(m, "Classifier")
      .def_property_readonly(
          "kind",
          [](const PyClassifier& c) {
            return std::string(to_string(c.model->kind()));
          })
      .def_property_readonly(
          "dim", [](const PyClassifier& c) { return c.model->dim(); })
      .def("predict",
           [](const PyClassifier& c, const Eigen::VectorXd& x) {
             return std::string(to_string(c.model->predict(x)));
           })
      .def("predict_batch", [](const PyClassifier& c,
                               const Eigen::MatrixXd& x) {
        return labels_to_strings(c.model->predict_batch(x));
      });

  m.def(
      "decode_wfdb_212",
      [](const py::bytes& data, std::size_t n_channels) {
        const std::string_view view = data;
        return decode_wfdb_212(
            std::span(reinterpret_cast<const std::uint8_t*>(view.data()),
                      view.size()),
            n_channels);
      },
      py::arg("data"), py::arg("n_channels"));
  m.def(
      "encode_wfdb_212",
      [](const std::vector<std::vector<std::int32_t>>& channels) {
        const auto bytes = encode_wfdb_212(channels);
        return py::bytes(reinterpret_cast<const char*>(bytes.data()),
                         bytes.size());
      },
      py::arg("channels"));
  m.def("read_wfdb_dat", &read_wfdb_dat, py::arg("path"),
        py::arg("n_channels"));

  m.def("resample_morphology", &resample_morphology, py::arg("segment"),
        py::arg("n_points"));

  m.def(
      "generate_synthetic",
      [](std::size_t classes, std::size_t per_class, std::size_t dims,
         double separation, std::uint64_t seed) {
        return generate_synthetic(
            {classes, per_class, dims, separation, seed});
      },
      py::arg("classes") = 6, py::arg("per_class") = 850,
      py::arg("dims") = 10, py::arg("separation") = 8.0, py::arg("seed") = 0);

  m.def(
      "inject_noise",
      [](const SampleSet& train, double level, std::uint64_t seed) {
        return inject_noise(train, {level, seed});
      },
      py::arg("train"), py::arg("level"), py::arg("seed") = 0);

  m.def(
      "ensemble_votes",
      [](const SampleSet& train, std::size_t folds, std::uint64_t seed,
         bool stratified) {
        return ensemble_votes(train, folds, seed, ClassifierConfig{},
                              stratified);
      },
      py::arg("train"), py::arg("folds") = 10, py::arg("seed") = 0,
      py::arg("stratified") = false);

  m.def("apply_standard", &apply_standard, py::arg("tally"),
        py::arg("standard"));
  m.def("remove_flagged", &remove_flagged, py::arg("train"),
        py::arg("flagged"));
  m.def("detection_metrics", &detection_metrics, py::arg("flagged"),
        py::arg("train"));

  m.def(
      "train_classifier",
      [](const std::string& kind, const SampleSet& train) {
        return PyClassifier{train_classifier(algorithm_from_string(kind),
                                             train, ClassifierConfig{})};
      },
      py::arg("kind"), py::arg("train"));
  m.def(
      "accuracy",
      [](const PyClassifier& model, const SampleSet& test) {
        return accuracy(*model.model, test);
      },
      py::arg("model"), py::arg("test"));

  m.def(
      "run_experiment",
      [](const std::filesystem::path& config_path) {
        const auto config = load_config(config_path);
        config.validate();
        const auto results = run_matrix(config);
        return emit_reports(results, config.out_dir, config.format);
      },
      py::arg("config_path"),
      "Runs the full matrix described by a config file and writes its "
      "reports; returns the written paths.");
}
