#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "somnb/bayes.hpp"
#include "somnb/dataset.hpp"
#include "somnb/klassen.hpp"
#include "somnb/pipeline.hpp"
#include "somnb/render.hpp"
#include "somnb/serialize.hpp"
#include "somnb/som.hpp"
#include "somnb/version.hpp"

namespace py = pybind11;
using namespace somnb;

PYBIND11_MODULE(_core, m) {
  m.doc() = "SOM pseudo-labeling, Gaussian naive Bayes, and Klassen typology";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::enum_<Quadrant>(m, "Quadrant")
      .value("Developed", Quadrant::Developed)
      .value("Stagnant", Quadrant::Stagnant)
      .value("Developing", Quadrant::Developing)
      .value("Underdeveloped", Quadrant::Underdeveloped);

  py::enum_<Topology>(m, "Topology")
      .value("Hexagonal", Topology::Hexagonal)
      .value("Rectangular", Topology::Rectangular);

  py::class_<FeatureRow>(m, "FeatureRow")
      .def(py::init([](double v1, double v2, double v3, double v4, std::string region_id,
                       std::string sector) {
             FeatureRow r;
             r.v1 = v1;
             r.v2 = v2;
             r.v3 = v3;
             r.v4 = v4;
             r.region_id = std::move(region_id);
             r.sector = std::move(sector);
             return r;
           }),
           py::arg("v1"), py::arg("v2"), py::arg("v3"), py::arg("v4"),
           py::arg("region_id") = "", py::arg("sector") = "")
      .def_readwrite("v1", &FeatureRow::v1)
      .def_readwrite("v2", &FeatureRow::v2)
      .def_readwrite("v3", &FeatureRow::v3)
      .def_readwrite("v4", &FeatureRow::v4)
      .def_readwrite("region_id", &FeatureRow::region_id)
      .def_readwrite("sector", &FeatureRow::sector)
      .def("features", &FeatureRow::features);

  py::class_<NormalizationParams>(m, "NormalizationParams")
      .def(py::init<>())
      .def_readwrite("enabled", &NormalizationParams::enabled)
      .def_readwrite("mean", &NormalizationParams::mean)
      .def_readwrite("stddev", &NormalizationParams::stddev);

  py::class_<FeatureTable>(m, "FeatureTable")
      .def(py::init<>())
      .def_readwrite("rows", &FeatureTable::rows)
      .def_readwrite("klassen", &FeatureTable::klassen)
      .def_readwrite("model", &FeatureTable::model)
      .def_readwrite("inconsistent_rows", &FeatureTable::inconsistent_rows);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int rows, int cols, Topology topology) {
             return GridSpec{rows, cols, topology};
           }),
           py::arg("rows") = 2, py::arg("cols") = 2,
           py::arg("topology") = Topology::Hexagonal)
      .def_readwrite("rows", &GridSpec::rows)
      .def_readwrite("cols", &GridSpec::cols)
      .def_readwrite("topology", &GridSpec::topology)
      .def("units", &GridSpec::units);

  py::class_<SomConfig>(m, "SomConfig")
      .def(py::init<>())
      .def_readwrite("grid", &SomConfig::grid)
      .def_readwrite("epochs", &SomConfig::epochs)
      .def_readwrite("alpha0", &SomConfig::alpha0)
      .def_readwrite("alpha_end", &SomConfig::alpha_end)
      .def_readwrite("sigma0", &SomConfig::sigma0)
      .def_readwrite("sigma_min", &SomConfig::sigma_min)
      .def_readwrite("seed", &SomConfig::seed);

  py::class_<Position>(m, "Position")
      .def_readonly("x", &Position::x)
      .def_readonly("y", &Position::y);

  py::class_<SomModel>(m, "SomModel")
      .def_readonly("config", &SomModel::config)
      .def_readonly("positions", &SomModel::positions)
      .def_readonly("prototypes", &SomModel::prototypes)
      .def_readonly("normalization", &SomModel::normalization)
      .def("to_json", &som_model_to_json);

  py::class_<NbModel>(m, "NbModel")
      .def_readonly("labels", &NbModel::labels)
      .def_readonly("priors", &NbModel::priors)
      .def_readonly("means", &NbModel::means)
      .def_readonly("variances", &NbModel::variances)
      .def_readonly("variance_floor", &NbModel::variance_floor)
      .def("to_json", &nb_model_to_json);

  py::class_<Prediction>(m, "Prediction")
      .def_readonly("label", &Prediction::label)
      .def_readonly("posteriors", &Prediction::posteriors);

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_readwrite("som", &PipelineConfig::som)
      .def_readwrite("nb_epsilon", &PipelineConfig::nb_epsilon)
      .def_readwrite("normalize", &PipelineConfig::normalize)
      .def_readwrite("swap_roles", &PipelineConfig::swap_roles);

  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("som_model", &PipelineResult::som_model)
      .def_readonly("nb_model", &PipelineResult::nb_model)
      .def_readonly("pseudo_labels", &PipelineResult::pseudo_labels)
      .def_readonly("predictions", &PipelineResult::predictions)
      .def_readonly("train_predictions", &PipelineResult::train_predictions)
      .def_readonly("posteriors", &PipelineResult::posteriors)
      .def_readonly("empty_units", &PipelineResult::empty_units)
      .def_readonly("warnings", &PipelineResult::warnings);

  py::class_<RawAgreement>(m, "RawAgreement")
      .def_readonly("matches", &RawAgreement::matches)
      .def_readonly("total", &RawAgreement::total)
      .def_readonly("matching_rows", &RawAgreement::matching_rows)
      .def("fraction", &RawAgreement::fraction)
      .def("percent", &RawAgreement::percent);

  py::class_<AlignedAgreement>(m, "AlignedAgreement")
      .def_readonly("matches", &AlignedAgreement::matches)
      .def_readonly("total", &AlignedAgreement::total)
      .def_readonly("mapping", &AlignedAgreement::mapping)
      .def("fraction", &AlignedAgreement::fraction)
      .def("percent", &AlignedAgreement::percent);

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def_readonly("labels", &ConfusionMatrix::labels)
      .def_readonly("counts", &ConfusionMatrix::counts);

  py::class_<EvaluationReport>(m, "EvaluationReport")
      .def_readonly("confusion", &EvaluationReport::confusion)
      .def_readonly("raw", &EvaluationReport::raw)
      .def_readonly("aligned", &EvaluationReport::aligned)
      .def_readonly("left_counts", &EvaluationReport::left_counts)
      .def_readonly("right_counts", &EvaluationReport::right_counts)
      .def_readonly("left_empty_labels", &EvaluationReport::left_empty_labels)
      .def_readonly("right_empty_labels", &EvaluationReport::right_empty_labels)
      .def("to_json", &report_to_json)
      .def("to_text", &report_to_text);

  m.def("sector_names", [] { return sector_names(); });
  m.def("classify_quadrant", &classify_quadrant, py::arg("row"));
  m.def("classify_all_labels", &classify_all_labels, py::arg("rows"));
  m.def("default_config", &default_config, py::arg("grid") = GridSpec{});
  m.def("grid_positions", &grid_positions, py::arg("grid"));
  m.def("initial_prototypes", &initial_prototypes, py::arg("rows"), py::arg("config"));
  m.def("train_som", &train_som, py::arg("rows"), py::arg("config"));
  m.def("assign_labels", &assign_labels, py::arg("model"), py::arg("rows"));
  m.def("quantization_error", &quantization_error, py::arg("model"), py::arg("rows"));
  m.def("som_energy", &som_energy, py::arg("model"), py::arg("rows"), py::arg("sigma"));
  m.def("fit_nb", &fit_nb, py::arg("rows"), py::arg("labels"), py::arg("epsilon") = 1e-9);
  m.def("log_likelihood", &log_likelihood, py::arg("model"), py::arg("x"), py::arg("label"));
  m.def("predict", &predict, py::arg("model"), py::arg("x"));
  m.def("run_pipeline", &run_pipeline, py::arg("train"), py::arg("test"), py::arg("config"));
  m.def("raw_agreement", &raw_agreement, py::arg("a"), py::arg("b"));
  m.def("aligned_agreement", &aligned_agreement, py::arg("a"), py::arg("b"));
  m.def("compare_labels", &compare_labels, py::arg("a"), py::arg("b"),
        py::arg("ensure_labels") = std::vector<int>{});
  m.def("compare_with_klassen", &compare_with_klassen, py::arg("rows"),
        py::arg("predictions"));
  m.def("fit_normalizer", &fit_normalizer, py::arg("rows"));
  m.def("apply_normalizer", &apply_normalizer, py::arg("params"), py::arg("rows"));
  m.def("load_feature_csv", &load_feature_csv, py::arg("path"));
  m.def("save_feature_csv", &save_feature_csv, py::arg("table"), py::arg("path"));
  m.def("som_model_from_json", &som_model_from_json, py::arg("text"));
  m.def("nb_model_from_json", &nb_model_from_json, py::arg("text"));
  m.def("report_from_json", &report_from_json, py::arg("text"));
  m.def("label_histogram", &label_histogram, py::arg("labels"), py::arg("units"));
}
