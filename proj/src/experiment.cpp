#include "labelguard/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "labelguard/errors.hpp"
#include "labelguard/features.hpp"
#include "labelguard/rng.hpp"
#include "labelguard/wfdb.hpp"

namespace labelguard {

std::pair<SampleSet, SampleSet> generate_synthetic(const SynthSpec& spec) {
  if (spec.separation <= 0.0) {
    throw ArgumentError("separation must be positive");
  }
  if (spec.classes < 1 || spec.classes > kNumClasses) {
    throw ArgumentError("class count must lie in [1, 6]");
  }
  if (spec.dims == 0) throw ArgumentError("dims must be >= 1");
  if (spec.per_class == 0) throw ArgumentError("per_class must be >= 1");

  const auto dims = static_cast<Eigen::Index>(spec.dims);
  std::vector<Eigen::VectorXd> means;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dims);
    if (spec.classes <= spec.dims) {
      // Orthogonal placement: pairwise distances exactly `separation`.
      mean[static_cast<Eigen::Index>(c)] = spec.separation / std::sqrt(2.0);
    } else {
      // Line placement: adjacent means `separation` apart.
      mean[0] = spec.separation * static_cast<double>(c);
    }
    means.push_back(std::move(mean));
  }

  const std::size_t per_split = spec.per_class;
  const auto rows = static_cast<Eigen::Index>(spec.classes * per_split);
  SampleSet train;
  SampleSet test;
  train.x.resize(rows, dims);
  test.x.resize(rows, dims);

  Eigen::Index at = 0;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    Rng rng(derive_seed(spec.seed, "synth", c));
    const std::string name(to_string(kAllLabels[c]));
    for (std::size_t half = 0; half < 2; ++half) {
      SampleSet& part = half == 0 ? train : test;
      const char* tag = half == 0 ? "train" : "test";
      for (std::size_t i = 0; i < per_split; ++i) {
        const Eigen::Index row = at + static_cast<Eigen::Index>(i);
        for (Eigen::Index d = 0; d < dims; ++d) {
          part.x(row, d) = means[c][d] + rng.normal();
        }
        part.ids.push_back(name + ":" + tag + ":" + std::to_string(i));
        part.labels.push_back(kAllLabels[c]);
        part.noise_flags.push_back(0);
      }
    }
    at += static_cast<Eigen::Index>(per_split);
  }
  train.validate();
  test.validate();
  return {std::move(train), std::move(test)};
}

namespace {

/// Per-record beat descriptors from either CSV flavor, in first-appearance
/// record order.
struct RecordBeats {
  std::vector<std::size_t> peaks;
  std::vector<ClassLabel> labels;
  std::map<std::size_t, double> qrs_s;  // keyed by r-peak, when supplied
};

std::vector<BeatSegment> load_beats_from_signals(
    const ExperimentConfig& config) {
  std::vector<std::string> record_order;
  std::map<std::string, RecordBeats> by_record;
  auto slot = [&](const std::string& id) -> RecordBeats& {
    if (by_record.find(id) == by_record.end()) record_order.push_back(id);
    return by_record[id];
  };

  if (config.source == DataSource::wfdb) {
    for (const AnnotationRow& row :
         read_annotations_csv(config.annotations_csv)) {
      RecordBeats& rec = slot(row.record_id);
      rec.peaks.push_back(row.sample_index);
      rec.labels.push_back(row.label);
    }
  } else {
    for (const BeatRow& row : read_beats_csv(config.beats_csv)) {
      RecordBeats& rec = slot(row.record_id);
      rec.peaks.push_back(row.r_peak_index);
      rec.labels.push_back(row.label);
      if (row.qrs_duration_ms) {
        rec.qrs_s[row.r_peak_index] = *row.qrs_duration_ms / 1000.0;
      }
    }
  }

  const std::size_t half_window =
      config.median_half_window > 0
          ? config.median_half_window
          : default_median_half_window(config.sampling_rate_hz);

  std::vector<BeatSegment> beats;
  for (const std::string& record_id : record_order) {
    const RecordBeats& rec = by_record[record_id];
    const auto path =
        std::filesystem::path(config.wfdb_dir) / (record_id + ".dat");
    RawRecord raw;
    raw.record_id = record_id;
    raw.sampling_rate_hz = config.sampling_rate_hz;
    raw.channels = read_wfdb_dat(path, config.wfdb_channels);
    for (std::size_t i = 0; i < rec.peaks.size(); ++i) {
      raw.annotations.emplace_back(rec.peaks[i], rec.labels[i]);
    }
    raw.validate();

    Signal signal;
    signal.sampling_rate_hz = config.sampling_rate_hz;
    const auto& lead = raw.channels[config.lead];
    signal.samples.assign(lead.begin(), lead.end());
    signal = median_baseline_remove(signal, half_window);
    if (config.denoise) {
      signal = wavelet_denoise(signal, config.wavelet_levels, config.wavelet);
    }

    SegmentationResult segmented =
        segment_beats(signal, rec.peaks, rec.labels);
    for (BeatSegment& beat : segmented.beats) {
      beat.record_id = record_id;
      const auto it = rec.qrs_s.find(beat.r_peak_index);
      beat.qrs_duration_s =
          it != rec.qrs_s.end()
              ? it->second
              : estimate_qrs_duration_s(beat, config.sampling_rate_hz);
      beats.push_back(std::move(beat));
    }
  }
  return beats;
}

}  // namespace

LoadedData load_dataset(const ExperimentConfig& config) {
  config.validate();

  SampleSet train;
  SampleSet test;
  if (config.source == DataSource::synthetic) {
    SynthSpec spec = config.synth;
    spec.seed = derive_seed(config.seed, "synth", 0);
    std::tie(train, test) = generate_synthetic(spec);
  } else {
    const std::vector<BeatSegment> beats = load_beats_from_signals(config);
    const SampleSet all = assemble_features(beats, config.morphology_points);
    SplitSpec split;
    split.counts = config.split_counts;
    split.seed = derive_seed(config.seed, "split", 0);
    std::tie(train, test) = build_split(all, split);
  }

  const NormalizationParams norm = fit_minmax(train);
  train = apply_minmax(train, norm);
  test = apply_minmax(test, norm);

  std::optional<std::size_t> override;
  if (config.pca_components > 0) override = config.pca_components;
  const PcaModel pca =
      fit_pca(train, config.pca_variance_target, override);

  LoadedData data;
  data.train = apply_pca(train, pca);
  data.test = apply_pca(test, pca);
  data.pca_components = pca.n_components();
  return data;
}

std::string_view to_string(Condition condition) {
  switch (condition) {
    case Condition::NF: return "NF";
    case Condition::IF: return "IF";
    case Condition::S1: return "S1";
    case Condition::S2: return "S2";
    case Condition::S3: return "S3";
  }
  throw ArgumentError("invalid Condition");
}

std::optional<Condition> parse_condition(std::string_view text) {
  for (Condition c : {Condition::NF, Condition::IF, Condition::S1,
                      Condition::S2, Condition::S3}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

bool MatrixResults::has_errors() const {
  return std::any_of(accuracy.begin(), accuracy.end(),
                     [](const ScenarioResult& r) { return !r.error.empty(); });
}

namespace {

Condition condition_for_standard(int standard) {
  switch (standard) {
    case 1: return Condition::S1;
    case 2: return Condition::S2;
    case 3: return Condition::S3;
  }
  throw ArgumentError("voting standard must be 1, 2 or 3");
}

int standard_of(Condition condition) {
  switch (condition) {
    case Condition::S1: return 1;
    case Condition::S2: return 2;
    case Condition::S3: return 3;
    default: return 0;
  }
}

struct CellRows {
  std::vector<ScenarioResult> accuracy;
  std::vector<DetectionRow> detection;
};

/// Runs the given conditions of one (level, repetition) cell. The ensemble
/// vote tally is computed once and shared by the S conditions.
CellRows run_cell(const LoadedData& data, const ExperimentConfig& config,
                  double level, std::size_t rep,
                  const std::vector<Condition>& conditions) {
  const std::uint64_t rep_seed = derive_seed(config.seed, "rep", rep);
  const std::uint64_t level_seed =
      derive_seed(rep_seed, "level", std::bit_cast<std::uint64_t>(level));

  NoiseSpec noise;
  noise.level = level;
  noise.seed = derive_seed(level_seed, "noise", 0);
  const SampleSet noisy = inject_noise(data.train, noise);

  CellRows out;
  auto eval_finals = [&](const SampleSet& set, Condition condition,
                         const std::string& fail = "") {
    for (AlgorithmKind kind : config.final_classifiers) {
      ScenarioResult row;
      row.classifier = kind;
      row.noise_level = level;
      row.condition = condition;
      row.rep = rep;
      row.error = fail;
      if (fail.empty()) {
        try {
          const ClassifierPtr model =
              train_classifier(kind, set, config.classifiers);
          row.accuracy = accuracy(*model, data.test);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      }
      out.accuracy.push_back(std::move(row));
    }
  };

  std::optional<VoteTally> votes;
  for (Condition condition : conditions) {
    switch (condition) {
      case Condition::NF:
        eval_finals(noisy, condition);
        break;
      case Condition::IF: {
        std::vector<std::size_t> keep;
        for (std::size_t r = 0; r < noisy.size(); ++r) {
          if (!noisy.noise_flags[r]) keep.push_back(r);
        }
        eval_finals(noisy.select(keep), condition);
        break;
      }
      default: {
        const int standard = standard_of(condition);
        if (!votes) {
          try {
            votes = ensemble_votes(noisy, config.folds,
                                   derive_seed(level_seed, "folds", 0),
                                   config.classifiers, config.stratified);
          } catch (const std::exception& e) {
            eval_finals(noisy, condition, e.what());
            break;
          }
        }
        const auto flagged = apply_standard(*votes, standard);
        DetectionRow det;
        det.noise_level = level;
        det.standard = standard;
        det.rep = rep;
        det.report = detection_metrics(flagged, noisy);
        out.detection.push_back(det);
        eval_finals(remove_flagged(noisy, flagged), condition);
        break;
      }
    }
  }
  return out;
}

std::vector<Condition> conditions_for(const ExperimentConfig& config,
                                      double level) {
  std::vector<Condition> conditions{Condition::NF};
  if (level > 0.0) {
    conditions.push_back(Condition::IF);
    for (int standard : config.standards) {
      conditions.push_back(condition_for_standard(standard));
    }
  }
  return conditions;
}

}  // namespace

std::vector<ScenarioResult> run_scenario(const ExperimentConfig& config,
                                         double noise_level,
                                         Condition condition) {
  config.validate();
  const LoadedData data = load_dataset(config);
  std::vector<ScenarioResult> rows;
  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    CellRows cell = run_cell(data, config, noise_level, rep, {condition});
    std::move(cell.accuracy.begin(), cell.accuracy.end(),
              std::back_inserter(rows));
  }
  return rows;
}

MatrixResults run_matrix(const ExperimentConfig& config) {
  return run_matrix(config, load_dataset(config));
}

MatrixResults run_matrix(const ExperimentConfig& config,
                         const LoadedData& data) {
  config.validate();
  MatrixResults results;
  for (double level : config.noise_levels) {
    const auto conditions = conditions_for(config, level);
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      CellRows cell = run_cell(data, config, level, rep, conditions);
      std::move(cell.accuracy.begin(), cell.accuracy.end(),
                std::back_inserter(results.accuracy));
      std::move(cell.detection.begin(), cell.detection.end(),
                std::back_inserter(results.detection));
    }
  }
  return results;
}

}  // namespace labelguard
