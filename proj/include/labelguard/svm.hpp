#pragma once

#include <Eigen/Dense>
#include <vector>

#include "labelguard/classifiers.hpp"

namespace labelguard {

/// One-vs-one soft-margin SVM trained with sequential minimal optimization.
/// Each class pair gets its own subproblem; prediction is by pairwise vote
/// with ties broken toward the smaller ClassLabel value.
class SvmClassifier final : public TrainedClassifier {
 public:
  struct PairModel {
    ClassLabel positive;  // decision value > 0 votes for this class
    ClassLabel negative;
    Eigen::MatrixXd support_vectors;  // rows
    Eigen::VectorXd alpha_y;          // alpha_i * y_i, y in {+1, -1}
    double bias = 0.0;
  };

  SvmClassifier(std::vector<PairModel> pairs, KernelSpec kernel,
                std::size_t dim);

  AlgorithmKind kind() const override { return AlgorithmKind::svm; }
  std::size_t dim() const override { return dim_; }
  ClassLabel predict(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  std::vector<ClassLabel> predict_batch(
      const Eigen::Ref<const Eigen::MatrixXd>& x) const override;

  const std::vector<PairModel>& pairs() const { return pairs_; }
  const KernelSpec& kernel() const { return kernel_; }

  /// Value of the pairwise decision function sum_i alpha_i y_i K(sv_i, x) + b.
  double decision_value(const PairModel& pair,
                        const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  std::vector<PairModel> pairs_;
  KernelSpec kernel_;
  std::size_t dim_;
};

ClassifierPtr train_svm(const SampleSet& train, const SvmConfig& config);

/// Kernel matrix between row sets; gamma must already be resolved.
Eigen::MatrixXd kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd>& a,
                              const Eigen::Ref<const Eigen::MatrixXd>& b,
                              const KernelSpec& kernel);

}  // namespace labelguard
