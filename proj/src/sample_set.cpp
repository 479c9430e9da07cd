#include "labelguard/sample_set.hpp"

#include <unordered_set>

#include "labelguard/errors.hpp"

namespace labelguard {

void SampleSet::validate() const {
  const std::size_t n = labels.size();
  if (static_cast<std::size_t>(x.rows()) != n || ids.size() != n ||
      noise_flags.size() != n)
    throw ArgumentError("SampleSet: row-aligned collections differ in length");
  if (!x.allFinite())
    throw ArgumentError("SampleSet: feature matrix has non-finite values");
  std::unordered_set<std::string> seen;
  seen.reserve(n);
  for (const auto& id : ids) {
    if (!seen.insert(id).second)
      throw ArgumentError("SampleSet: duplicate sample id '" + id + "'");
  }
}

SampleSet SampleSet::select(const std::vector<std::size_t>& rows) const {
  SampleSet out;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), x.cols());
  out.labels.reserve(rows.size());
  out.ids.reserve(rows.size());
  out.noise_flags.reserve(rows.size());
  Eigen::Index r = 0;
  for (std::size_t i : rows) {
    out.x.row(r++) = x.row(static_cast<Eigen::Index>(i));
    out.labels.push_back(labels[i]);
    out.ids.push_back(ids[i]);
    out.noise_flags.push_back(noise_flags[i]);
  }
  return out;
}

std::array<std::size_t, kNumClasses> SampleSet::class_counts() const {
  std::array<std::size_t, kNumClasses> counts{};
  for (ClassLabel label : labels) counts[static_cast<int>(label)]++;
  return counts;
}

}  // namespace labelguard
