#pragma once

#include <Eigen/Dense>
#include <vector>

#include "labelguard/classifiers.hpp"

namespace labelguard {

/// Gaussian naive Bayes with per-class feature means and floored variances.
/// Scoring runs in log space; score ties prefer the smaller ClassLabel value.
class NaiveBayesClassifier final : public TrainedClassifier {
 public:
  struct ClassModel {
    ClassLabel label;
    double log_prior;
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;  // already floored
  };

  NaiveBayesClassifier(std::vector<ClassModel> classes, std::size_t dim);

  AlgorithmKind kind() const override { return AlgorithmKind::nb; }
  std::size_t dim() const override { return dim_; }
  ClassLabel predict(const Eigen::Ref<const Eigen::VectorXd>& x) const override;

  const std::vector<ClassModel>& classes() const { return classes_; }
  double log_score(const ClassModel& cls,
                   const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  std::vector<ClassModel> classes_;
  std::size_t dim_;
};

ClassifierPtr train_naive_bayes(const SampleSet& train, const NbConfig& config);

}  // namespace labelguard
