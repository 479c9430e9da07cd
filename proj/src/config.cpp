#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "labelguard/errors.hpp"
#include "labelguard/experiment.hpp"

namespace labelguard {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw ConfigError("invalid value for " + key + ": '" + value + "'");
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) bad_value(key, value);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    bad_value(key, value);
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) bad_value(key, value);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    bad_value(key, value);
  }
}

std::size_t to_size(const std::string& key, const std::string& value) {
  return static_cast<std::size_t>(to_u64(key, value));
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value);
}

std::vector<std::string> split_list(const std::string& key,
                                    const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) items.push_back(trim(item));
  if (items.empty()) {
    throw ConfigError("key '" + key + "' needs at least one value");
  }
  return items;
}

void apply_key(ExperimentConfig& config, const std::string& key,
               const std::string& value) {
  if (key == "data.source") {
    if (value == "synthetic") config.source = DataSource::synthetic;
    else if (value == "beats") config.source = DataSource::beats;
    else if (value == "wfdb") config.source = DataSource::wfdb;
    else bad_value(key, value);
  } else if (key == "data.wfdb_dir") {
    config.wfdb_dir = value;
  } else if (key == "data.annotations") {
    config.annotations_csv = value;
  } else if (key == "data.beats") {
    config.beats_csv = value;
  } else if (key == "data.sampling_rate") {
    config.sampling_rate_hz = to_double(key, value);
  } else if (key == "data.channels") {
    config.wfdb_channels = to_size(key, value);
  } else if (key == "data.lead") {
    config.lead = to_size(key, value);
  } else if (key == "synth.classes") {
    config.synth.classes = to_size(key, value);
  } else if (key == "synth.per_class") {
    config.synth.per_class = to_size(key, value);
  } else if (key == "synth.dims") {
    config.synth.dims = to_size(key, value);
  } else if (key == "synth.separation") {
    config.synth.separation = to_double(key, value);
  } else if (key == "split.counts") {
    const auto items = split_list(key, value);
    if (items.size() != kNumClasses) {
      throw ConfigError("split.counts needs exactly 6 values (N,A,V,RB,P,LB)");
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      config.split_counts[c] = to_size(key, items[c]);
    }
  } else if (key == "signal.median_half_window") {
    config.median_half_window = to_size(key, value);
  } else if (key == "signal.wavelet") {
    if (value == "db4") config.wavelet = Wavelet::db4;
    else if (value == "haar") config.wavelet = Wavelet::haar;
    else bad_value(key, value);
  } else if (key == "signal.levels") {
    config.wavelet_levels = static_cast<int>(to_size(key, value));
  } else if (key == "signal.denoise") {
    config.denoise = to_bool(key, value);
  } else if (key == "features.morphology_points") {
    config.morphology_points = to_size(key, value);
  } else if (key == "pca.variance_target") {
    config.pca_variance_target = to_double(key, value);
  } else if (key == "pca.components") {
    config.pca_components = to_size(key, value);
  } else if (key == "svm.kernel") {
    if (value == "rbf") config.classifiers.svm.kernel.kind = KernelSpec::Kind::rbf;
    else if (value == "linear") config.classifiers.svm.kernel.kind = KernelSpec::Kind::linear;
    else bad_value(key, value);
  } else if (key == "svm.gamma") {
    config.classifiers.svm.kernel.gamma = to_double(key, value);
  } else if (key == "svm.c") {
    config.classifiers.svm.kernel.c = to_double(key, value);
  } else if (key == "svm.tol") {
    config.classifiers.svm.tol = to_double(key, value);
  } else if (key == "svm.max_iter") {
    config.classifiers.svm.max_iter =
        static_cast<std::int64_t>(to_u64(key, value));
  } else if (key == "knn.k") {
    config.classifiers.knn.k = to_size(key, value);
  } else if (key == "nb.variance_floor") {
    config.classifiers.nb.variance_floor = to_double(key, value);
  } else if (key == "lda.ridge") {
    config.classifiers.lda.ridge_scale = to_double(key, value);
  } else if (key == "c45.max_depth") {
    config.classifiers.c45.max_depth = to_size(key, value);
  } else if (key == "c45.min_split") {
    config.classifiers.c45.min_split = to_size(key, value);
  } else if (key == "filter.folds") {
    config.folds = to_size(key, value);
  } else if (key == "filter.stratified") {
    config.stratified = to_bool(key, value);
  } else if (key == "filter.standards") {
    config.standards.clear();
    for (const auto& item : split_list(key, value)) {
      config.standards.push_back(static_cast<int>(to_size(key, item)));
    }
  } else if (key == "noise.levels") {
    config.noise_levels.clear();
    for (const auto& item : split_list(key, value)) {
      config.noise_levels.push_back(to_double(key, item));
    }
  } else if (key == "experiment.reps") {
    config.reps = to_size(key, value);
  } else if (key == "experiment.seed") {
    config.seed = to_u64(key, value);
  } else if (key == "experiment.out") {
    config.out_dir = value;
  } else if (key == "experiment.finals") {
    config.final_classifiers.clear();
    for (const auto& item : split_list(key, value)) {
      const auto kind = parse_algorithm(item);
      if (!kind) bad_value(key, value);
      config.final_classifiers.push_back(*kind);
    }
  } else if (key == "report.format") {
    config.format = value;
  } else if (key == "report.dump_features") {
    config.dump_features = to_bool(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    apply_key(config, key, value);
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

void ExperimentConfig::validate() const {
  if (source == DataSource::synthetic) {
    if (synth.classes < 2 || synth.classes > kNumClasses) {
      throw ConfigError("synth.classes must lie in [2, 6]");
    }
    if (synth.per_class == 0) throw ConfigError("synth.per_class must be >= 1");
    if (synth.dims == 0) throw ConfigError("synth.dims must be >= 1");
    if (synth.separation <= 0.0) {
      throw ConfigError("synth.separation must be positive");
    }
  } else {
    if (wfdb_dir.empty() || !std::filesystem::is_directory(wfdb_dir)) {
      throw ConfigError("data.wfdb_dir must name an existing directory");
    }
    const std::string& csv =
        source == DataSource::wfdb ? annotations_csv : beats_csv;
    const char* csv_key =
        source == DataSource::wfdb ? "data.annotations" : "data.beats";
    if (csv.empty() || !std::filesystem::is_regular_file(csv)) {
      throw ConfigError(std::string(csv_key) + " must name an existing file");
    }
    if (sampling_rate_hz <= 0.0) {
      throw ConfigError("data.sampling_rate must be positive");
    }
    if (wfdb_channels == 0) throw ConfigError("data.channels must be >= 1");
    if (lead >= wfdb_channels) {
      throw ConfigError("data.lead must be smaller than data.channels");
    }
  }
  if (morphology_points < 2) {
    throw ConfigError("features.morphology_points must be >= 2");
  }
  if (wavelet_levels < 1) throw ConfigError("signal.levels must be >= 1");
  if (pca_variance_target <= 0.0 || pca_variance_target > 1.0) {
    throw ConfigError("pca.variance_target must lie in (0, 1]");
  }
  if (classifiers.svm.kernel.c <= 0.0) throw ConfigError("svm.c must be positive");
  if (classifiers.svm.kernel.gamma < 0.0) {
    throw ConfigError("svm.gamma must be >= 0 (0 means 1/D)");
  }
  if (classifiers.svm.tol <= 0.0) throw ConfigError("svm.tol must be positive");
  if (classifiers.svm.max_iter < 1) throw ConfigError("svm.max_iter must be >= 1");
  if (classifiers.knn.k == 0) throw ConfigError("knn.k must be >= 1");
  if (classifiers.nb.variance_floor <= 0.0) {
    throw ConfigError("nb.variance_floor must be positive");
  }
  if (classifiers.lda.ridge_scale <= 0.0) {
    throw ConfigError("lda.ridge must be positive");
  }
  if (classifiers.c45.max_depth == 0) {
    throw ConfigError("c45.max_depth must be >= 1");
  }
  if (classifiers.c45.min_split == 0) {
    throw ConfigError("c45.min_split must be >= 1");
  }
  if (folds < 2) throw ConfigError("filter.folds must be >= 2");
  for (double level : noise_levels) {
    if (level < 0.0 || level >= 1.0) {
      throw ConfigError("noise.levels entries must lie in [0, 1)");
    }
  }
  if (noise_levels.empty()) throw ConfigError("noise.levels must not be empty");
  std::set<int> seen;
  for (int standard : standards) {
    if (standard < 1 || standard > 3) {
      throw ConfigError("filter.standards entries must be 1, 2 or 3");
    }
    if (!seen.insert(standard).second) {
      throw ConfigError("filter.standards entries must be unique");
    }
  }
  if (reps == 0) throw ConfigError("experiment.reps must be >= 1");
  if (final_classifiers.empty()) {
    throw ConfigError("experiment.finals must not be empty");
  }
  if (format != "csv" && format != "markdown") {
    throw ConfigError("report.format must be csv or markdown");
  }
}

}  // namespace labelguard
