#pragma once

#include <Eigen/Dense>
#include <vector>

#include "labelguard/classifiers.hpp"

namespace labelguard {

/// Linear discriminant analysis with a pooled within-class covariance,
/// ridge-regularized for invertibility. Score ties prefer the smaller
/// ClassLabel value.
class LdaClassifier final : public TrainedClassifier {
 public:
  struct ClassModel {
    ClassLabel label;
    Eigen::VectorXd weight;  // Sigma^-1 mu
    double offset;           // -mu' Sigma^-1 mu / 2 + log prior
  };

  LdaClassifier(std::vector<ClassModel> classes, std::size_t dim);

  AlgorithmKind kind() const override { return AlgorithmKind::lda; }
  std::size_t dim() const override { return dim_; }
  ClassLabel predict(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  std::vector<ClassLabel> predict_batch(
      const Eigen::Ref<const Eigen::MatrixXd>& x) const override;

  const std::vector<ClassModel>& classes() const { return classes_; }

 private:
  std::vector<ClassModel> classes_;
  Eigen::MatrixXd weights_;  // one column per class, for the batched path
  Eigen::VectorXd offsets_;
  std::size_t dim_;
};

ClassifierPtr train_lda(const SampleSet& train, const LdaConfig& config);

}  // namespace labelguard
