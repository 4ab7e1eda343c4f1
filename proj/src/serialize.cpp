#include "somnb/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace somnb {

namespace {

using nlohmann::json;

constexpr int kDocVersion = 1;

json parse_document(const std::string& text, const char* format) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != format) {
    throw Error(ErrorCode::IoError, std::string("expected a ") + format + " document");
  }
  if (doc.value("version", 0) != kDocVersion) {
    throw Error(ErrorCode::IoError, "unsupported document version");
  }
  return doc;
}

template <typename T>
T field(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("field '") + key + "': " + e.what());
  }
}

json normalization_to_json(const NormalizationParams& params) {
  return json{{"enabled", params.enabled},
              {"mean", params.mean},
              {"stddev", params.stddev}};
}

NormalizationParams normalization_from_json(const json& j) {
  NormalizationParams params;
  params.enabled = field<bool>(j, "enabled");
  params.mean = field<std::vector<double>>(j, "mean");
  params.stddev = field<std::vector<double>>(j, "stddev");
  return params;
}

template <typename V>
json int_map_to_json(const std::map<int, V>& m) {
  json out = json::object();
  for (const auto& [key, value] : m) out[std::to_string(key)] = value;
  return out;
}

template <typename V>
std::map<int, V> int_map_from_json(const json& j) {
  std::map<int, V> out;
  for (const auto& [key, value] : j.items()) {
    try {
      out[std::stoi(key)] = value.template get<V>();
    } catch (const std::exception& e) {
      throw Error(ErrorCode::IoError, std::string("map entry '") + key + "': " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string som_model_to_json(const SomModel& model) {
  json positions = json::array();
  for (const auto& p : model.positions) positions.push_back(json::array({p.x, p.y}));
  json doc{
      {"format", "somnb-som-model"},
      {"version", kDocVersion},
      {"config",
       {{"grid",
         {{"rows", model.config.grid.rows},
          {"cols", model.config.grid.cols},
          {"topology",
           model.config.grid.topology == Topology::Hexagonal ? "hexagonal" : "rectangular"}}},
        {"epochs", model.config.epochs},
        {"alpha0", model.config.alpha0},
        {"alpha_end", model.config.alpha_end},
        {"sigma0", model.config.sigma0},
        {"sigma_min", model.config.sigma_min},
        {"seed", model.config.seed}}},
      {"positions", positions},
      {"prototypes", model.prototypes},
      {"normalization", normalization_to_json(model.normalization)},
  };
  return doc.dump(2) + "\n";
}

SomModel som_model_from_json(const std::string& text) {
  const json doc = parse_document(text, "somnb-som-model");
  SomModel model;
  const json config = field<json>(doc, "config");
  const json grid = field<json>(config, "grid");
  model.config.grid.rows = field<int>(grid, "rows");
  model.config.grid.cols = field<int>(grid, "cols");
  const std::string topology = field<std::string>(grid, "topology");
  if (topology == "hexagonal") {
    model.config.grid.topology = Topology::Hexagonal;
  } else if (topology == "rectangular") {
    model.config.grid.topology = Topology::Rectangular;
  } else {
    throw Error(ErrorCode::IoError, "unknown topology '" + topology + "'");
  }
  model.config.epochs = field<int>(config, "epochs");
  model.config.alpha0 = field<double>(config, "alpha0");
  model.config.alpha_end = field<double>(config, "alpha_end");
  model.config.sigma0 = field<double>(config, "sigma0");
  model.config.sigma_min = field<double>(config, "sigma_min");
  model.config.seed = field<std::uint64_t>(config, "seed");
  model.config.validate();

  for (const json& p : field<json>(doc, "positions")) {
    if (!p.is_array() || p.size() != 2) {
      throw Error(ErrorCode::IoError, "positions must be [x, y] pairs");
    }
    model.positions.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  model.prototypes = field<std::vector<std::vector<double>>>(doc, "prototypes");
  model.normalization = normalization_from_json(field<json>(doc, "normalization"));

  const auto units = static_cast<std::size_t>(model.config.grid.units());
  if (model.positions.size() != units || model.prototypes.size() != units) {
    throw Error(ErrorCode::DimensionMismatch, "unit count does not match the grid");
  }
  for (const auto& proto : model.prototypes) {
    if (proto.size() != model.prototypes.front().size()) {
      throw Error(ErrorCode::DimensionMismatch, "ragged prototype matrix");
    }
  }
  return model;
}

std::string nb_model_to_json(const NbModel& model) {
  json doc{
      {"format", "somnb-nb-model"}, {"version", kDocVersion},
      {"labels", model.labels},     {"priors", model.priors},
      {"means", model.means},       {"variances", model.variances},
      {"variance_floor", model.variance_floor},
  };
  return doc.dump(2) + "\n";
}

NbModel nb_model_from_json(const std::string& text) {
  const json doc = parse_document(text, "somnb-nb-model");
  NbModel model;
  model.labels = field<std::vector<int>>(doc, "labels");
  model.priors = field<std::vector<double>>(doc, "priors");
  model.means = field<std::vector<std::vector<double>>>(doc, "means");
  model.variances = field<std::vector<std::vector<double>>>(doc, "variances");
  model.variance_floor = field<double>(doc, "variance_floor");
  const std::size_t classes = model.labels.size();
  if (model.priors.size() != classes || model.means.size() != classes ||
      model.variances.size() != classes) {
    throw Error(ErrorCode::DimensionMismatch, "per-class arrays disagree on class count");
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (model.means[c].size() != model.dimension() ||
        model.variances[c].size() != model.dimension()) {
      throw Error(ErrorCode::DimensionMismatch, "ragged mean/variance matrix");
    }
  }
  return model;
}

std::string report_to_json(const EvaluationReport& report) {
  json doc{
      {"format", "somnb-report"},
      {"version", kDocVersion},
      {"labels", report.confusion.labels},
      {"confusion", report.confusion.counts},
      {"raw",
       {{"matches", report.raw.matches},
        {"total", report.raw.total},
        {"percent", report.raw.percent()},
        {"matching_rows", report.raw.matching_rows}}},
      {"aligned",
       {{"matches", report.aligned.matches},
        {"total", report.aligned.total},
        {"percent", report.aligned.percent()},
        {"mapping", int_map_to_json(report.aligned.mapping)}}},
      {"left_counts", int_map_to_json(report.left_counts)},
      {"right_counts", int_map_to_json(report.right_counts)},
      {"left_empty_labels", report.left_empty_labels},
      {"right_empty_labels", report.right_empty_labels},
  };
  return doc.dump(2) + "\n";
}

EvaluationReport report_from_json(const std::string& text) {
  const json doc = parse_document(text, "somnb-report");
  EvaluationReport report;
  report.confusion.labels = field<std::vector<int>>(doc, "labels");
  report.confusion.counts = field<std::vector<std::vector<std::int64_t>>>(doc, "confusion");
  const json raw = field<json>(doc, "raw");
  report.raw.matches = field<std::int64_t>(raw, "matches");
  report.raw.total = field<std::int64_t>(raw, "total");
  report.raw.matching_rows = field<std::vector<std::size_t>>(raw, "matching_rows");
  const json aligned = field<json>(doc, "aligned");
  report.aligned.matches = field<std::int64_t>(aligned, "matches");
  report.aligned.total = field<std::int64_t>(aligned, "total");
  report.aligned.mapping = int_map_from_json<int>(field<json>(aligned, "mapping"));
  report.left_counts = int_map_from_json<std::int64_t>(field<json>(doc, "left_counts"));
  report.right_counts = int_map_from_json<std::int64_t>(field<json>(doc, "right_counts"));
  report.left_empty_labels = field<std::vector<int>>(doc, "left_empty_labels");
  report.right_empty_labels = field<std::vector<int>>(doc, "right_empty_labels");
  return report;
}

namespace {

std::string join_ints(const std::vector<int>& xs) {
  if (xs.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

std::string report_to_text(const EvaluationReport& report) {
  std::ostringstream out;
  out << "rows compared: " << report.raw.total << "\n";
  out << "raw agreement: " << report.raw.matches << "/" << report.raw.total << " = "
      << report.raw.percent() << "%\n";
  out << "matching rows:";
  if (report.raw.matching_rows.empty()) {
    out << " (none)";
  } else {
    for (std::size_t row : report.raw.matching_rows) out << " " << row;
  }
  out << "\n";
  out << "aligned agreement: " << report.aligned.matches << "/" << report.aligned.total
      << " = " << report.aligned.percent() << "%\n";
  out << "alignment:";
  for (const auto& [from, to] : report.aligned.mapping) {
    out << " " << from << "->" << to;
  }
  out << "\n";
  out << "left empty labels: " << join_ints(report.left_empty_labels) << "\n";
  out << "right empty labels: " << join_ints(report.right_empty_labels) << "\n";
  out << "counts per label (left/right):\n";
  for (int label : report.confusion.labels) {
    const auto left = report.left_counts.count(label) ? report.left_counts.at(label) : 0;
    const auto right = report.right_counts.count(label) ? report.right_counts.at(label) : 0;
    out << "  " << label << ": " << left << "/" << right << "\n";
  }
  out << "confusion (left rows x right columns):\n";
  char cell[32];
  out << "      ";
  for (int label : report.confusion.labels) {
    std::snprintf(cell, sizeof(cell), "%6d", label);
    out << cell;
  }
  out << "\n";
  for (std::size_t i = 0; i < report.confusion.labels.size(); ++i) {
    std::snprintf(cell, sizeof(cell), "%6d", report.confusion.labels[i]);
    out << cell;
    for (std::size_t j = 0; j < report.confusion.labels.size(); ++j) {
      std::snprintf(cell, sizeof(cell), "%6lld",
                    static_cast<long long>(report.confusion.counts[i][j]));
      out << cell;
    }
    out << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failure on '" + path + "'");
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failure on '" + path + "'");
}

}  // namespace somnb
