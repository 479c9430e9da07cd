#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "labelguard/classifiers.hpp"

namespace labelguard {

/// C4.5-style decision tree over numeric features: binary splits at value
/// midpoints chosen by gain ratio, majority leaves with ties broken toward
/// the smaller ClassLabel value.
class C45Classifier final : public TrainedClassifier {
 public:
  struct Node {
    // Leaves keep feature == -1.
    std::int32_t feature = -1;
    double threshold = 0.0;  // x[feature] <= threshold goes left
    std::int32_t left = -1;
    std::int32_t right = -1;
    ClassLabel leaf_label = ClassLabel::N;
  };

  C45Classifier(std::vector<Node> nodes, std::size_t dim);

  AlgorithmKind kind() const override { return AlgorithmKind::c45; }
  std::size_t dim() const override { return dim_; }
  ClassLabel predict(const Eigen::Ref<const Eigen::VectorXd>& x) const override;

  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Node> nodes_;  // nodes_[0] is the root
  std::size_t dim_;
};

ClassifierPtr train_c45(const SampleSet& train, const C45Config& config);

}  // namespace labelguard
