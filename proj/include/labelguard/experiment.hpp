#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "labelguard/classifiers.hpp"
#include "labelguard/filter.hpp"
#include "labelguard/ingest.hpp"
#include "labelguard/sample_set.hpp"
#include "labelguard/signal.hpp"

namespace labelguard {

/// Synthetic Gaussian-blob request. per_class counts the training samples
/// per class; an equally sized test half is generated alongside.
struct SynthSpec {
  std::size_t classes = 6;
  std::size_t per_class = 850;
  std::size_t dims = 10;
  double separation = 8.0;
  std::uint64_t seed = 0;
};

/// Unit-variance blobs whose class means are pairwise at least `separation`
/// apart, split 50/50 into (train, test) per class.
std::pair<SampleSet, SampleSet> generate_synthetic(const SynthSpec& spec);

enum class DataSource { synthetic, beats, wfdb };

struct ExperimentConfig {
  DataSource source = DataSource::synthetic;
  std::string wfdb_dir;
  std::string annotations_csv;
  std::string beats_csv;
  double sampling_rate_hz = 360.0;
  std::size_t wfdb_channels = 2;
  std::size_t lead = 0;

  SynthSpec synth;

  std::array<std::size_t, kNumClasses> split_counts =
      reference_split_spec(0).counts;

  std::size_t median_half_window = 0;  // 0 derives from the sampling rate
  Wavelet wavelet = Wavelet::db4;
  int wavelet_levels = 8;
  bool denoise = true;
  std::size_t morphology_points = 300;

  double pca_variance_target = 0.99;
  std::size_t pca_components = 0;  // 0 uses the variance target

  ClassifierConfig classifiers;

  std::vector<double> noise_levels = {0.0, 0.05, 0.1, 0.2, 0.3, 0.4};
  std::vector<int> standards = {1, 2, 3};
  std::size_t folds = 10;
  bool stratified = false;
  std::size_t reps = 5;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::vector<AlgorithmKind> final_classifiers = {
      AlgorithmKind::nb, AlgorithmKind::knn, AlgorithmKind::lda};
  std::string format = "csv";
  bool dump_features = false;

  /// Throws ConfigError on out-of-range values or a missing data source.
  void validate() const;
};

/// Parses the flat key=value config format ('#' comments, blank lines
/// allowed). Unknown keys throw ConfigError.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Training and held-out test sets after the full feature pipeline
/// (normalization and PCA fit on train only).
struct LoadedData {
  SampleSet train;
  SampleSet test;
  std::size_t pca_components = 0;
};

LoadedData load_dataset(const ExperimentConfig& config);

enum class Condition { NF, IF, S1, S2, S3 };
std::string_view to_string(Condition condition);
std::optional<Condition> parse_condition(std::string_view text);

struct ScenarioResult {
  AlgorithmKind classifier = AlgorithmKind::nb;
  double noise_level = 0.0;
  Condition condition = Condition::NF;
  std::size_t rep = 0;
  double accuracy = 0.0;
  std::string error;  // non-empty marks a failed scenario; accuracy invalid
};

struct DetectionRow {
  double noise_level = 0.0;
  int standard = 0;
  std::size_t rep = 0;
  FilterReport report;
};

struct MatrixResults {
  std::vector<ScenarioResult> accuracy;
  std::vector<DetectionRow> detection;

  bool has_errors() const;
};

/// One (noise level, condition) cell over every repetition, on a dataset
/// loaded per the config. NF trains the final classifiers on the noisy
/// training set; IF removes exactly the injected rows first; S1/S2/S3 run
/// the ensemble filter at that standard. A failed cell is recorded on the
/// result rows, never thrown.
std::vector<ScenarioResult> run_scenario(const ExperimentConfig& config,
                                         double noise_level,
                                         Condition condition);

/// Full Cartesian product: noise levels x conditions x repetitions, sharing
/// one loaded dataset and one vote tally per (level, rep). Noise level 0
/// runs only the NF condition.
MatrixResults run_matrix(const ExperimentConfig& config);
MatrixResults run_matrix(const ExperimentConfig& config,
                         const LoadedData& data);

/// Writes detection + accuracy reports into out_dir. format "csv" emits
/// per-repetition rows; "markdown" emits tables of means over repetitions.
/// Empty results throw ArgumentError; filesystem failures throw IoError.
std::vector<std::filesystem::path> emit_reports(
    const MatrixResults& results, const std::filesystem::path& out_dir,
    std::string_view format);

/// Detection CSV round-trip helpers (schema:
/// noise_level,standard,rep,ANM,INM,AINM,P_D,P_FA).
void write_detection_csv(const std::vector<DetectionRow>& rows,
                         const std::filesystem::path& path);
std::vector<DetectionRow> read_detection_csv(const std::filesystem::path& path);

/// Accuracy CSV (schema: classifier,noise_level,condition,rep,accuracy;
/// failed rows carry NA).
void write_accuracy_csv(const std::vector<ScenarioResult>& rows,
                        const std::filesystem::path& path);

}  // namespace labelguard
