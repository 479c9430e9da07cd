#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "labelguard/labels.hpp"

namespace labelguard {

/// A labeled feature matrix. Rows are samples; the side vectors are
/// row-aligned. noise_flags marks samples whose label was artificially
/// changed (used only for detection bookkeeping, never by classifiers).
struct SampleSet {
  Eigen::MatrixXd x;
  std::vector<ClassLabel> labels;
  std::vector<std::string> ids;
  std::vector<std::uint8_t> noise_flags;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(x.cols()); }
  bool empty() const { return labels.empty(); }

  /// Throws ArgumentError if row-aligned collections disagree, ids repeat
  /// or the matrix contains non-finite values.
  void validate() const;

  /// New set containing the given rows, in the given order.
  SampleSet select(const std::vector<std::size_t>& rows) const;

  /// Per-class row counts indexed by ClassLabel order.
  std::array<std::size_t, kNumClasses> class_counts() const;
};

}  // namespace labelguard
