#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "labelguard/classifiers.hpp"
#include "labelguard/sample_set.hpp"

namespace labelguard {

/// Label-noise injection request. level is the per-class fraction of labels
/// to corrupt; floor(n_c * level) samples of each class are relabeled.
struct NoiseSpec {
  double level = 0.0;
  std::uint64_t seed = 0;
};

/// Returns a copy of train with exactly floor(n_c * level) labels per class
/// changed to a uniformly random different class (seeded, without
/// replacement). Changed rows get noise_flags set; features are untouched.
SampleSet inject_noise(const SampleSet& train, const NoiseSpec& spec);

/// Seeded partition of the row indices [0, n) into k folds whose sizes
/// differ by at most one; each fold is sorted ascending. The stratified
/// variant deals each class's shuffled rows round-robin instead.
std::vector<std::vector<std::size_t>> kfold_partition(const SampleSet& train,
                                                      std::size_t k,
                                                      std::uint64_t seed,
                                                      bool stratified = false);

/// Per-sample mislabel votes, row-aligned with the tallied set.
struct VoteTally {
  std::vector<std::string> ids;
  std::vector<std::uint8_t> counts;  // 0..5
};

/// Runs one k-fold sweep: for every fold, the five classifiers train on the
/// other folds and predict the fold's samples; each prediction differing
/// from the sample's current label adds one vote. Sub-training sets missing
/// a class fall back to the degenerate single-class handling and never
/// abort the sweep.
VoteTally ensemble_votes(const SampleSet& train, std::size_t k,
                         std::uint64_t seed, const ClassifierConfig& config,
                         bool stratified = false);

/// Vote threshold behind a voting standard: 1 -> 5, 2 -> 4, 3 -> 3.
std::size_t standard_threshold(int standard);

/// Ids whose tally reaches the standard's threshold, in tally order.
std::vector<std::string> apply_standard(const VoteTally& tally, int standard);

/// train minus the flagged rows, survivor order preserved. Ids absent from
/// train throw ArgumentError.
SampleSet remove_flagged(const SampleSet& train,
                         const std::vector<std::string>& flagged);

/// Detection outcome of one filter pass. The ratio metrics are absent when
/// the set carries no noise flags (ANM = 0).
struct FilterReport {
  std::size_t anm = 0;   // actual mislabeled (noise-flagged) rows
  std::size_t inm = 0;   // rows identified as mislabeled
  std::size_t ainm = 0;  // correctly identified mislabeled rows
  std::optional<double> p_d;
  std::optional<double> p_fa;
};

FilterReport detection_metrics(const std::vector<std::string>& flagged,
                               const SampleSet& train);

}  // namespace labelguard
