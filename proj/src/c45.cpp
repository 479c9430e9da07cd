#include "labelguard/c45.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "labelguard/errors.hpp"

namespace labelguard {

namespace {

double entropy_bits(const std::array<std::size_t, kNumClasses>& counts,
                    std::size_t total) {
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

ClassLabel majority(const std::array<std::size_t, kNumClasses>& counts) {
  return kAllLabels[static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin())];
}

struct SplitChoice {
  bool found = false;
  Eigen::Index feature = 0;
  double threshold = 0.0;
  double gain_ratio = -1.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const SampleSet& train, const C45Config& config)
      : train_(train), config_(config) {}

  std::vector<C45Classifier::Node> build() {
    std::vector<std::size_t> rows(train_.size());
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
    grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  std::int32_t grow(std::vector<std::size_t>& rows, std::size_t depth) {
    std::array<std::size_t, kNumClasses> counts{};
    for (std::size_t r : rows) {
      ++counts[static_cast<std::size_t>(train_.labels[r])];
    }
    const bool pure =
        *std::max_element(counts.begin(), counts.end()) == rows.size();

    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    nodes_[static_cast<std::size_t>(id)].leaf_label = majority(counts);

    if (pure || depth >= config_.max_depth || rows.size() < config_.min_split) {
      return id;
    }
    const SplitChoice split = best_split(rows, counts);
    if (!split.found) return id;  // every feature is constant on this node

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) {
      auto& side = train_.x(static_cast<Eigen::Index>(r), split.feature) <=
                           split.threshold
                       ? left
                       : right;
      side.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const std::int32_t left_id = grow(left, depth + 1);
    const std::int32_t right_id = grow(right, depth + 1);
    auto& node = nodes_[static_cast<std::size_t>(id)];
    node.feature = static_cast<std::int32_t>(split.feature);
    node.threshold = split.threshold;
    node.left = left_id;
    node.right = right_id;
    return id;
  }

  SplitChoice best_split(const std::vector<std::size_t>& rows,
                         const std::array<std::size_t, kNumClasses>& counts) {
    const std::size_t n = rows.size();
    const double parent_entropy = entropy_bits(counts, n);
    SplitChoice best;

    std::vector<std::pair<double, ClassLabel>> column(n);
    for (Eigen::Index f = 0; f < train_.x.cols(); ++f) {
      for (std::size_t r = 0; r < n; ++r) {
        column[r] = {train_.x(static_cast<Eigen::Index>(rows[r]), f),
                     train_.labels[rows[r]]};
      }
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      std::array<std::size_t, kNumClasses> left{};
      for (std::size_t i = 1; i < n; ++i) {
        ++left[static_cast<std::size_t>(column[i - 1].second)];
        const double lo = column[i - 1].first;
        const double hi = column[i].first;
        if (lo == hi) continue;

        std::array<std::size_t, kNumClasses> right{};
        for (std::size_t c = 0; c < kNumClasses; ++c) {
          right[c] = counts[c] - left[c];
        }
        const double pl = static_cast<double>(i) / static_cast<double>(n);
        const double pr = 1.0 - pl;
        const double gain = parent_entropy - pl * entropy_bits(left, i) -
                            pr * entropy_bits(right, n - i);
        const double split_info = -pl * std::log2(pl) - pr * std::log2(pr);
        const double ratio = gain / split_info;
        if (ratio > best.gain_ratio) {
          double thr = lo + (hi - lo) / 2.0;
          if (thr >= hi) thr = lo;  // midpoint rounded up to hi
          best.found = true;
          best.feature = f;
          best.threshold = thr;
          best.gain_ratio = ratio;
        }
      }
    }
    return best;
  }

  const SampleSet& train_;
  const C45Config& config_;
  std::vector<C45Classifier::Node> nodes_;
};

}  // namespace

C45Classifier::C45Classifier(std::vector<Node> nodes, std::size_t dim)
    : nodes_(std::move(nodes)), dim_(dim) {
  if (nodes_.empty()) throw ArgumentError("decision tree has no nodes");
}

ClassLabel C45Classifier::predict(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_dim(x.size());
  std::size_t at = 0;
  while (nodes_[at].feature >= 0) {
    const Node& node = nodes_[at];
    at = static_cast<std::size_t>(
        x[node.feature] <= node.threshold ? node.left : node.right);
  }
  return nodes_[at].leaf_label;
}

ClassifierPtr train_c45(const SampleSet& train, const C45Config& config) {
  if (train.empty()) throw ArgumentError("cannot train on an empty sample set");
  TreeBuilder builder(train, config);
  return std::make_shared<C45Classifier>(builder.build(), train.dim());
}

}  // namespace labelguard
