#include "labelguard/filter.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "labelguard/errors.hpp"
#include "labelguard/rng.hpp"

namespace labelguard {

SampleSet inject_noise(const SampleSet& train, const NoiseSpec& spec) {
  if (spec.level < 0.0 || spec.level >= 1.0) {
    throw ArgumentError("noise level must lie in [0, 1)");
  }
  SampleSet out = train;
  if (spec.level == 0.0) return out;

  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t r = 0; r < train.size(); ++r) {
    by_class[static_cast<std::size_t>(train.labels[r])].push_back(r);
  }

  Rng rng(spec.seed);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const auto& rows = by_class[c];
    // The epsilon keeps exact products like 1500 * 0.05 from flooring low.
    const auto change = static_cast<std::size_t>(std::floor(
        static_cast<double>(rows.size()) * spec.level + 1e-9));
    if (change == 0) continue;
    std::vector<std::size_t> picks =
        rng.sample_without_replacement(rows.size(), change);
    std::sort(picks.begin(), picks.end());
    for (std::size_t pick : picks) {
      const std::size_t row = rows[pick];
      // Uniform over the five other classes.
      std::size_t target = rng.below(kNumClasses - 1);
      if (target >= c) ++target;
      out.labels[row] = kAllLabels[target];
      out.noise_flags[row] = 1;
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> kfold_partition(const SampleSet& train,
                                                      std::size_t k,
                                                      std::uint64_t seed,
                                                      bool stratified) {
  const std::size_t n = train.size();
  if (k == 0 || k > n) {
    throw ArgumentError("fold count must lie in [1, sample count]");
  }
  Rng rng(seed);
  std::vector<std::size_t> order;
  if (stratified) {
    // Class-sorted, shuffled within class; the round-robin deal below then
    // balances every class across folds to within one sample.
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      std::vector<std::size_t> rows;
      for (std::size_t r = 0; r < n; ++r) {
        if (train.labels[r] == kAllLabels[c]) rows.push_back(r);
      }
      rng.shuffle(rows);
      order.insert(order.end(), rows.begin(), rows.end());
    }
  } else {
    order.resize(n);
    for (std::size_t r = 0; r < n; ++r) order[r] = r;
    rng.shuffle(order);
  }

  std::vector<std::vector<std::size_t>> folds(k);
  if (stratified) {
    for (std::size_t i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
  } else {
    // First n % k folds take the extra sample.
    std::size_t at = 0;
    for (std::size_t f = 0; f < k; ++f) {
      const std::size_t len = n / k + (f < n % k ? 1 : 0);
      folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(at),
                      order.begin() + static_cast<std::ptrdiff_t>(at + len));
      at += len;
    }
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

VoteTally ensemble_votes(const SampleSet& train, std::size_t k,
                         std::uint64_t seed, const ClassifierConfig& config,
                         bool stratified) {
  if (k < 2) throw ArgumentError("cross validation requires k >= 2");
  const auto folds = kfold_partition(train, k, seed, stratified);

  VoteTally tally;
  tally.ids = train.ids;
  tally.counts.assign(train.size(), 0);

  std::vector<std::uint8_t> held_out(train.size(), 0);
  for (const auto& fold : folds) {
    for (std::size_t r : fold) held_out[r] = 1;
    std::vector<std::size_t> sub_rows;
    sub_rows.reserve(train.size() - fold.size());
    for (std::size_t r = 0; r < train.size(); ++r) {
      if (!held_out[r]) sub_rows.push_back(r);
    }
    const SampleSet sub = train.select(sub_rows);
    const SampleSet validation = train.select(fold);

    for (AlgorithmKind kind : kAllAlgorithms) {
      const ClassifierPtr model = train_classifier(kind, sub, config);
      const auto predicted = model->predict_batch(validation.x);
      for (std::size_t i = 0; i < fold.size(); ++i) {
        if (predicted[i] != validation.labels[i]) ++tally.counts[fold[i]];
      }
    }
    for (std::size_t r : fold) held_out[r] = 0;
  }
  return tally;
}

std::size_t standard_threshold(int standard) {
  switch (standard) {
    case 1: return 5;
    case 2: return 4;
    case 3: return 3;
  }
  throw ArgumentError("voting standard must be 1, 2 or 3");
}

std::vector<std::string> apply_standard(const VoteTally& tally, int standard) {
  const std::size_t threshold = standard_threshold(standard);
  std::vector<std::string> flagged;
  for (std::size_t i = 0; i < tally.counts.size(); ++i) {
    if (tally.counts[i] >= threshold) flagged.push_back(tally.ids[i]);
  }
  return flagged;
}

SampleSet remove_flagged(const SampleSet& train,
                         const std::vector<std::string>& flagged) {
  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < train.size(); ++r) row_of[train.ids[r]] = r;

  std::vector<std::uint8_t> drop(train.size(), 0);
  for (const std::string& id : flagged) {
    const auto it = row_of.find(id);
    if (it == row_of.end()) {
      throw ArgumentError("flagged id not in the sample set: " + id);
    }
    drop[it->second] = 1;
  }
  std::vector<std::size_t> keep;
  keep.reserve(train.size());
  for (std::size_t r = 0; r < train.size(); ++r) {
    if (!drop[r]) keep.push_back(r);
  }
  return train.select(keep);
}

FilterReport detection_metrics(const std::vector<std::string>& flagged,
                               const SampleSet& train) {
  std::unordered_set<std::string> noisy;
  for (std::size_t r = 0; r < train.size(); ++r) {
    if (train.noise_flags[r]) noisy.insert(train.ids[r]);
  }
  FilterReport report;
  report.anm = noisy.size();
  report.inm = flagged.size();
  for (const std::string& id : flagged) {
    if (noisy.count(id)) ++report.ainm;
  }
  if (report.anm > 0) {
    const double anm = static_cast<double>(report.anm);
    report.p_d = static_cast<double>(report.ainm) / anm;
    report.p_fa = static_cast<double>(report.inm - report.ainm) / anm;
  }
  return report;
}

}  // namespace labelguard
