#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "labelguard/errors.hpp"
#include "labelguard/experiment.hpp"
#include "labelguard/features.hpp"
#include "labelguard/filter.hpp"

namespace lg = labelguard;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitScenario = 3;

std::string fmt_metric(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

void print_filter_report(const lg::FilterReport& report, int standard,
                         std::uint64_t seed) {
  std::cout << "noise_level,standard,ANM,INM,AINM,P_D,P_FA,seed\n";
  std::cout << "NA," << standard << ',' << report.anm << ',' << report.inm
            << ',' << report.ainm << ',' << fmt_metric(report.p_d) << ','
            << fmt_metric(report.p_fa) << ',' << seed << '\n';
}

int cmd_run(const std::string& config_path,
            const std::optional<std::string>& levels,
            const std::optional<std::string>& standards,
            const std::optional<std::uint64_t>& seed,
            const std::optional<std::size_t>& reps,
            const std::optional<std::string>& out,
            const std::optional<std::string>& format) {
  lg::ExperimentConfig config = lg::load_config(config_path);
  // CLI overrides reuse the config parser so the accepted syntax matches.
  std::string overrides;
  if (levels) overrides += "noise.levels = " + *levels + "\n";
  if (standards) overrides += "filter.standards = " + *standards + "\n";
  if (seed) overrides += "experiment.seed = " + std::to_string(*seed) + "\n";
  if (reps) overrides += "experiment.reps = " + std::to_string(*reps) + "\n";
  if (out) overrides += "experiment.out = " + *out + "\n";
  if (format) overrides += "report.format = " + *format + "\n";
  if (!overrides.empty()) {
    std::ifstream in(config_path);
    if (!in) throw lg::ConfigError("cannot read config file: " + config_path);
    std::ostringstream text;
    text << in.rdbuf();
    text << '\n' << overrides;
    config = lg::parse_config_text(text.str());
  }
  config.validate();

  const lg::LoadedData data = lg::load_dataset(config);
  std::cerr << "dataset: " << data.train.size() << " train / "
            << data.test.size() << " test samples, " << data.train.dim()
            << " components\n";
  if (config.dump_features) {
    std::filesystem::create_directories(config.out_dir);
    lg::write_feature_csv(data.train,
                          std::filesystem::path(config.out_dir) /
                              "features_train.csv");
    lg::write_feature_csv(data.test, std::filesystem::path(config.out_dir) /
                                         "features_test.csv");
  }

  const lg::MatrixResults results = lg::run_matrix(config, data);
  const auto written =
      lg::emit_reports(results, config.out_dir, config.format);
  for (const auto& path : written) std::cout << path.string() << '\n';

  if (results.has_errors()) {
    for (const lg::ScenarioResult& row : results.accuracy) {
      if (row.error.empty()) continue;
      std::cerr << "scenario error: level " << row.noise_level << ' '
                << lg::to_string(row.condition) << " rep " << row.rep << ' '
                << lg::to_string(row.classifier) << ": " << row.error << '\n';
    }
    return kExitScenario;
  }
  return kExitOk;
}

int cmd_filter(const std::string& train_path, int standard,
               const std::string& out_path, std::size_t folds,
               std::uint64_t seed, bool stratified) {
  const lg::SampleSet train = lg::read_feature_csv(train_path);
  const lg::ClassifierConfig config;
  const lg::VoteTally votes =
      lg::ensemble_votes(train, folds, seed, config, stratified);
  const auto flagged = lg::apply_standard(votes, standard);
  const lg::FilterReport report = lg::detection_metrics(flagged, train);
  const lg::SampleSet cleaned = lg::remove_flagged(train, flagged);
  lg::write_feature_csv(cleaned, out_path);
  print_filter_report(report, standard, seed);
  std::cerr << "kept " << cleaned.size() << " of " << train.size()
            << " samples -> " << out_path << '\n';
  return kExitOk;
}

int cmd_synth(std::size_t classes, std::size_t per_class, std::size_t dims,
              double separation, std::uint64_t seed,
              const std::string& out_dir) {
  lg::SynthSpec spec;
  spec.classes = classes;
  spec.per_class = per_class;
  spec.dims = dims;
  spec.separation = separation;
  spec.seed = seed;
  const auto [train, test] = lg::generate_synthetic(spec);
  std::filesystem::create_directories(out_dir);
  const auto train_path = std::filesystem::path(out_dir) / "synth_train.csv";
  const auto test_path = std::filesystem::path(out_dir) / "synth_test.csv";
  lg::write_feature_csv(train, train_path);
  lg::write_feature_csv(test, test_path);
  std::cout << train_path.string() << '\n' << test_path.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mislabeled-sample filtering for annotated beat datasets"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand(
      "run", "Run the full noise/filter/accuracy experiment matrix");
  std::string config_path;
  std::optional<std::string> levels;
  std::optional<std::string> standards;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> reps;
  std::optional<std::string> out_override;
  std::optional<std::string> format;
  run->add_option("--config", config_path, "Experiment config file")
      ->required();
  run->add_option("--levels", levels, "Comma list of noise levels in [0,1)");
  run->add_option("--standards", standards,
                  "Comma list of voting standards (1,2,3)");
  run->add_option("--seed", seed_override, "Master seed");
  run->add_option("--reps", reps, "Repetitions per cell");
  run->add_option("--out", out_override, "Output directory");
  run->add_option("--format", format, "Report format: csv or markdown");

  auto* filter = app.add_subcommand(
      "filter", "Flag and remove mislabeled rows of a feature CSV");
  std::string train_path;
  std::string filter_out;
  int standard = 2;
  std::size_t folds = 10;
  std::uint64_t filter_seed = 0;
  bool stratified = false;
  filter->add_option("--train", train_path, "Feature CSV to clean")
      ->required();
  filter->add_option("--standard", standard, "Voting standard (1, 2 or 3)")
      ->check(CLI::Range(1, 3));
  filter->add_option("--out", filter_out, "Cleaned feature CSV path")
      ->required();
  filter->add_option("--folds", folds, "Cross-validation folds");
  filter->add_option("--seed", filter_seed, "Fold partition seed");
  filter->add_flag("--stratified", stratified, "Stratify folds by class");

  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic Gaussian-blob feature CSV pair");
  std::size_t classes = 6;
  std::size_t per_class = 850;
  std::size_t dims = 10;
  double separation = 8.0;
  std::uint64_t synth_seed = 0;
  std::string synth_out = ".";
  synth->add_option("--classes", classes, "Number of classes (2-6)");
  synth->add_option("--per-class", per_class, "Training samples per class");
  synth->add_option("--dims", dims, "Feature dimensionality");
  synth->add_option("--separation", separation,
                    "Minimum distance between class means");
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--out", synth_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config_path, levels, standards, seed_override, reps,
                     out_override, format);
    }
    if (filter->parsed()) {
      return cmd_filter(train_path, standard, filter_out, folds, filter_seed,
                        stratified);
    }
    return cmd_synth(classes, per_class, dims, separation, synth_seed,
                     synth_out);
  } catch (const lg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const lg::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const lg::IoError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const lg::ArgumentError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
