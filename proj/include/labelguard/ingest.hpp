#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "labelguard/labels.hpp"
#include "labelguard/sample_set.hpp"
#include "labelguard/signal.hpp"

namespace labelguard {

/// One ECG recording: integer ADC samples per channel plus R-peak
/// annotations.
struct RawRecord {
  std::string record_id;
  double sampling_rate_hz = 360.0;
  std::vector<std::vector<std::int32_t>> channels;
  std::vector<std::pair<std::size_t, ClassLabel>> annotations;

  /// Checks equal channel lengths and strictly increasing in-range
  /// annotation indices.
  void validate() const;
};

struct AnnotationRow {
  std::string record_id;
  std::size_t sample_index = 0;
  ClassLabel label = ClassLabel::N;
};

struct BeatRow {
  std::string record_id;
  std::size_t r_peak_index = 0;
  ClassLabel label = ClassLabel::N;
  std::optional<double> qrs_duration_ms;
};

/// Reads `record_id,sample_index,label` rows. Labels may be canonical names
/// or the MIT-BIH symbols of the six classes; rows carrying other known
/// MIT-BIH symbols are dropped, anything else is a parse error naming the
/// row.
std::vector<AnnotationRow> read_annotations_csv(
    const std::filesystem::path& path);

/// Reads `record_id,r_peak_index,label[,qrs_duration_ms]` rows with the same
/// label handling as read_annotations_csv.
std::vector<BeatRow> read_beats_csv(const std::filesystem::path& path);

/// Requested per-class training counts plus the sampling seed.
struct SplitSpec {
  std::array<std::size_t, kNumClasses> counts{};
  std::uint64_t seed = 0;
};

/// The reference split: 1500 N, 100 A, 1000 V, 1000 RB, 1000 P, 500 LB.
SplitSpec reference_split_spec(std::uint64_t seed);

/// Partitions the samples into a training set with exactly the requested
/// per-class counts (seeded sampling without replacement; original row order
/// preserved within each part) and a test set holding everything else.
std::pair<SampleSet, SampleSet> build_split(const SampleSet& all,
                                            const SplitSpec& spec);

}  // namespace labelguard
