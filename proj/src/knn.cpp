#include "labelguard/knn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "labelguard/errors.hpp"

namespace labelguard {

KnnClassifier::KnnClassifier(Eigen::MatrixXd points,
                             std::vector<ClassLabel> labels, std::size_t k)
    : points_(std::move(points)),
      point_norms_(points_.rowwise().squaredNorm()),
      labels_(std::move(labels)),
      k_(k) {
  if (k_ == 0) throw ArgumentError("knn requires k >= 1");
  if (labels_.size() != static_cast<std::size_t>(points_.rows())) {
    throw ArgumentError("knn row/label count mismatch");
  }
}

ClassLabel KnnClassifier::vote(const Eigen::VectorXd& dist2) const {
  const std::size_t n = labels_.size();
  const std::size_t take = std::min(k_, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(),
                    order.begin() + static_cast<std::ptrdiff_t>(take),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      const double da = dist2[static_cast<Eigen::Index>(a)];
                      const double db = dist2[static_cast<Eigen::Index>(b)];
                      return da < db || (da == db && a < b);
                    });
  std::array<std::size_t, kNumClasses> counts{};
  std::array<double, kNumClasses> sum_dist{};
  for (std::size_t r = 0; r < take; ++r) {
    const std::size_t cls = static_cast<std::size_t>(labels_[order[r]]);
    ++counts[cls];
    sum_dist[cls] +=
        std::sqrt(std::max(0.0, dist2[static_cast<Eigen::Index>(order[r])]));
  }
  // Vote ties go to the class with smaller summed distance, then label order.
  std::size_t best = kNumClasses;
  for (std::size_t cls = 0; cls < kNumClasses; ++cls) {
    if (counts[cls] == 0) continue;
    if (best == kNumClasses || counts[cls] > counts[best] ||
        (counts[cls] == counts[best] && sum_dist[cls] < sum_dist[best])) {
      best = cls;
    }
  }
  return kAllLabels[best];
}

ClassLabel KnnClassifier::predict(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_dim(x.size());
  const Eigen::VectorXd dist2 =
      (point_norms_ - 2.0 * (points_ * x)).array() + x.squaredNorm();
  return vote(dist2);
}

std::vector<ClassLabel> KnnClassifier::predict_batch(
    const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  check_dim(x.cols());
  std::vector<ClassLabel> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  // One GEMM per block keeps the distance work cache-friendly.
  constexpr Eigen::Index kBlock = 256;
  for (Eigen::Index start = 0; start < x.rows(); start += kBlock) {
    const Eigen::Index len = std::min(kBlock, x.rows() - start);
    const auto block = x.middleRows(start, len);
    Eigen::MatrixXd dist2 =
        (-2.0 * (points_ * block.transpose())).colwise() + point_norms_;
    dist2.rowwise() += block.rowwise().squaredNorm().transpose();
    for (Eigen::Index q = 0; q < len; ++q) {
      out.push_back(vote(dist2.col(q)));
    }
  }
  return out;
}

ClassifierPtr train_knn(const SampleSet& train, const KnnConfig& config) {
  if (train.empty()) throw ArgumentError("cannot train on an empty sample set");
  return std::make_shared<KnnClassifier>(train.x, train.labels, config.k);
}

}  // namespace labelguard
