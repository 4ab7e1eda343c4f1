#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "somnb/klassen.hpp"
#include "somnb/pipeline.hpp"
#include "somnb/render.hpp"
#include "somnb/serialize.hpp"
#include "somnb/version.hpp"

namespace {

using nlohmann::json;

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

struct ManifestInput {
  std::string role;
  std::string path;
};

json make_manifest(const std::string& command, const json& config,
                   const std::vector<ManifestInput>& inputs,
                   const std::vector<std::string>& outputs) {
  json input_docs = json::array();
  for (const auto& input : inputs) {
    input_docs.push_back({{"role", input.role},
                          {"path", input.path},
                          {"fnv1a64", fnv1a64_hex(somnb::read_text_file(input.path))}});
  }
  return json{{"format", "somnb-manifest"},
              {"version", 1},
              {"tool", {{"name", "somnb"}, {"version", somnb::kVersion}}},
              {"command", command},
              {"config", config},
              {"inputs", input_docs},
              {"outputs", outputs}};
}

somnb::GridSpec parse_grid(const std::string& text, const std::string& topology) {
  somnb::GridSpec grid;
  grid.topology = topology == "rect" ? somnb::Topology::Rectangular
                                     : somnb::Topology::Hexagonal;
  const auto sep = text.find('x');
  if (sep == std::string::npos) {
    throw somnb::Error(somnb::ErrorCode::InvalidConfig,
                       "--grid expects RxC, e.g. 2x2, got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    grid.rows = std::stoi(text.substr(0, sep), &used);
    if (used != sep) throw std::invalid_argument(text);
    grid.cols = std::stoi(text.substr(sep + 1), &used);
    if (used != text.size() - sep - 1) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw somnb::Error(somnb::ErrorCode::InvalidConfig,
                       "--grid expects RxC, e.g. 2x2, got '" + text + "'");
  }
  grid.validate();
  return grid;
}

int cmd_ingest(const std::string& panel_path, const std::string& out_path) {
  const somnb::Panel panel = somnb::load_panel_csv(panel_path);
  somnb::FeatureTable table;
  table.rows = somnb::build_feature_rows(panel);
  somnb::save_feature_csv(table, out_path);

  const std::string manifest_path = out_path + ".manifest.json";
  const json manifest = make_manifest("ingest", json::object(), {{"panel", panel_path}},
                                      {out_path, manifest_path});
  somnb::write_text_file(manifest_path, manifest.dump(2) + "\n");
  std::cout << "wrote " << table.rows.size() << " feature rows to " << out_path << "\n";
  return 0;
}

struct RunOptions {
  std::string train_path;
  std::string test_path;
  std::uint64_t seed = 0;
  int epochs = 1000;
  std::string grid = "2x2";
  std::string topology = "hex";
  std::string normalize = "off";
  bool swap_roles = false;
  std::string out_dir = "out";
};

int cmd_run(const RunOptions& opts) {
  somnb::PipelineConfig config;
  config.som = somnb::default_config(parse_grid(opts.grid, opts.topology));
  config.som.epochs = opts.epochs;
  config.som.seed = opts.seed;
  config.som.validate();
  config.normalize = opts.normalize == "on";
  config.swap_roles = opts.swap_roles;

  const somnb::FeatureTable train = somnb::load_feature_csv(opts.train_path);
  const somnb::FeatureTable test = somnb::load_feature_csv(opts.test_path);
  const somnb::PipelineResult result = somnb::run_pipeline(train.rows, test.rows, config);
  for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << "\n";

  // Predictions refer to whichever set played the test role after any swap.
  const auto& scored_rows = config.swap_roles ? train.rows : test.rows;
  std::vector<int> predicted;
  predicted.reserve(result.predictions.size());
  for (int label : result.predictions) predicted.push_back(label + 1);
  const somnb::EvaluationReport report = somnb::compare_with_klassen(scored_rows, predicted);
  for (int label : report.right_empty_labels) {
    std::cerr << "warning: no scored row was predicted label " << label << "\n";
  }

  std::filesystem::create_directories(opts.out_dir);
  auto out_path = [&](const char* name) {
    return (std::filesystem::path(opts.out_dir) / name).string();
  };
  somnb::write_text_file(out_path("report.json"), somnb::report_to_json(report));
  somnb::write_text_file(out_path("report.txt"), somnb::report_to_text(report));
  somnb::write_text_file(out_path("som_model.json"), somnb::som_model_to_json(result.som_model));
  somnb::write_text_file(out_path("nb_model.json"), somnb::nb_model_to_json(result.nb_model));
  const auto counts = somnb::label_histogram(
      result.pseudo_labels, static_cast<std::size_t>(config.som.grid.units()));
  somnb::write_text_file(out_path("hitmap.txt"), somnb::hitmap_text(config.som.grid, counts));
  somnb::write_text_file(out_path("hitmap.svg"), somnb::hitmap_svg(config.som.grid, counts));

  const json config_doc{
      {"seed", config.som.seed},
      {"epochs", config.som.epochs},
      {"grid", {{"rows", config.som.grid.rows}, {"cols", config.som.grid.cols}}},
      {"topology", opts.topology == "rect" ? "rectangular" : "hexagonal"},
      {"alpha0", config.som.alpha0},
      {"alpha_end", config.som.alpha_end},
      {"sigma0", config.som.sigma0},
      {"sigma_min", config.som.sigma_min},
      {"normalize", config.normalize},
      {"swap_roles", config.swap_roles},
      {"nb_epsilon", config.nb_epsilon},
  };
  const json manifest = make_manifest(
      "run", config_doc, {{"train", opts.train_path}, {"test", opts.test_path}},
      {"report.json", "report.txt", "som_model.json", "nb_model.json", "hitmap.txt",
       "hitmap.svg", "manifest.json"});
  somnb::write_text_file(out_path("manifest.json"), manifest.dump(2) + "\n");

  std::cout << somnb::report_to_text(report);
  return 0;
}

struct CompareOptions {
  std::string features_path;
  std::string left = "klassen";
  std::string right = "model";
  std::string out_dir;
};

std::vector<int> pick_column(const somnb::FeatureTable& table, const std::string& which) {
  if (which == "rule") return somnb::classify_all_labels(table.rows);
  if (which == "klassen") {
    if (!table.klassen) {
      throw somnb::Error(somnb::ErrorCode::MalformedRow, "missing column 'klassen'");
    }
    return *table.klassen;
  }
  if (!table.model) {
    throw somnb::Error(somnb::ErrorCode::MalformedRow, "missing column 'model'");
  }
  return *table.model;
}

int cmd_compare(const CompareOptions& opts) {
  const somnb::FeatureTable table = somnb::load_feature_csv(opts.features_path);
  const std::vector<int> left = pick_column(table, opts.left);
  const std::vector<int> right = pick_column(table, opts.right);
  const somnb::EvaluationReport report = somnb::compare_labels(left, right, {1, 2, 3, 4});
  std::cout << somnb::report_to_text(report);

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    auto out_path = [&](const char* name) {
      return (std::filesystem::path(opts.out_dir) / name).string();
    };
    somnb::write_text_file(out_path("report.json"), somnb::report_to_json(report));
    somnb::write_text_file(out_path("report.txt"), somnb::report_to_text(report));
    const json config_doc{{"left", opts.left}, {"right", opts.right}};
    const json manifest =
        make_manifest("compare", config_doc, {{"features", opts.features_path}},
                      {"report.json", "report.txt", "manifest.json"});
    somnb::write_text_file(out_path("manifest.json"), manifest.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SOM pseudo-labeling, naive Bayes classification, and Klassen typology"};
  app.set_version_flag("--version", somnb::kVersion);
  app.require_subcommand(1);

  std::string panel_path, ingest_out;
  CLI::App* ingest = app.add_subcommand("ingest", "Derive feature rows from a raw GDP panel");
  ingest->add_option("panel", panel_path, "panel CSV path")->required();
  ingest->add_option("out", ingest_out, "feature CSV output path")->required();

  RunOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "Train the pipeline and score the test rows");
  run->add_option("train", run_opts.train_path, "training feature CSV")->required();
  run->add_option("test", run_opts.test_path, "test feature CSV")->required();
  run->add_option("--seed", run_opts.seed, "training seed")->capture_default_str();
  run->add_option("--epochs", run_opts.epochs, "training epochs")->capture_default_str();
  run->add_option("--grid", run_opts.grid, "grid size RxC")->capture_default_str();
  run->add_option("--topology", run_opts.topology, "grid topology")
      ->check(CLI::IsMember({"hex", "rect"}))
      ->capture_default_str();
  run->add_option("--normalize", run_opts.normalize, "standardize features")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  run->add_flag("--swap-roles", run_opts.swap_roles, "exchange train/test roles");
  run->add_option("--out", run_opts.out_dir, "output directory")->capture_default_str();

  CompareOptions cmp_opts;
  CLI::App* compare = app.add_subcommand("compare", "Compare two label columns of a feature CSV");
  compare->add_option("features", cmp_opts.features_path, "feature CSV with label columns")
      ->required();
  compare->add_option("--left", cmp_opts.left, "left labels: klassen|model|rule")
      ->check(CLI::IsMember({"klassen", "model", "rule"}))
      ->capture_default_str();
  compare->add_option("--right", cmp_opts.right, "right labels: klassen|model|rule")
      ->check(CLI::IsMember({"klassen", "model", "rule"}))
      ->capture_default_str();
  compare->add_option("--out", cmp_opts.out_dir, "optional output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(panel_path, ingest_out);
    if (run->parsed()) return cmd_run(run_opts);
    return cmd_compare(cmp_opts);
  } catch (const somnb::Error& e) {
    std::cerr << "error: " << somnb::error_code_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
