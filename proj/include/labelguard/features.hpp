#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "labelguard/sample_set.hpp"
#include "labelguard/signal.hpp"

namespace labelguard {

inline constexpr std::size_t kMorphologyPoints = 300;

/// Builds one feature row per beat: the morphology resampled to
/// morphology_points values followed by the QRS duration, the RR interval
/// and the RR interval averaged over up to the last ten beats of the same
/// record (current beat included). Beats must arrive in temporal order per
/// record. Sample ids are "<record_id>:<r_peak_index>".
SampleSet assemble_features(const std::vector<BeatSegment>& beats,
                            std::size_t morphology_points = kMorphologyPoints);

struct NormalizationParams {
  Eigen::VectorXd min;
  Eigen::VectorXd max;
};

/// Per-feature extrema over the training rows only.
NormalizationParams fit_minmax(const SampleSet& train);

/// x* = (x - min) / (max - min). Constant features map to 0; values outside
/// the fitted range clamp to [0, 1].
SampleSet apply_minmax(const SampleSet& set, const NormalizationParams& params);

struct PcaModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;         // rows are principal directions
  Eigen::VectorXd explained_variance; // non-increasing

  std::size_t n_components() const {
    return static_cast<std::size_t>(components.rows());
  }
};

/// Mean-centered covariance eigendecomposition keeping the smallest number
/// of leading components whose cumulative explained-variance ratio reaches
/// variance_target. A positive component_override wins over the target.
PcaModel fit_pca(const SampleSet& train, double variance_target,
                 std::optional<std::size_t> component_override = std::nullopt);

/// Projects rows onto the principal directions; labels, ids and noise flags
/// are carried through unchanged.
SampleSet apply_pca(const SampleSet& set, const PcaModel& model);

/// Feature-matrix dump with header `id,label,noise_flag,f1..fD`. Values are
/// written with enough digits to round-trip exactly.
void write_feature_csv(const SampleSet& set,
                       const std::filesystem::path& path);
SampleSet read_feature_csv(const std::filesystem::path& path);

}  // namespace labelguard
