#pragma once

#include <Eigen/Dense>
#include <vector>

#include "labelguard/classifiers.hpp"

namespace labelguard {

/// k-nearest-neighbour classifier over squared Euclidean distance.
/// Neighbour ties at equal distance prefer the earlier training row; vote
/// ties prefer the smaller ClassLabel value.
class KnnClassifier final : public TrainedClassifier {
 public:
  KnnClassifier(Eigen::MatrixXd points, std::vector<ClassLabel> labels,
                std::size_t k);

  AlgorithmKind kind() const override { return AlgorithmKind::knn; }
  std::size_t dim() const override { return static_cast<std::size_t>(points_.cols()); }
  ClassLabel predict(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  std::vector<ClassLabel> predict_batch(
      const Eigen::Ref<const Eigen::MatrixXd>& x) const override;

  std::size_t k() const { return k_; }

 private:
  ClassLabel vote(const Eigen::VectorXd& dist2) const;

  Eigen::MatrixXd points_;
  Eigen::VectorXd point_norms_;
  std::vector<ClassLabel> labels_;
  std::size_t k_;
};

ClassifierPtr train_knn(const SampleSet& train, const KnnConfig& config);

}  // namespace labelguard
