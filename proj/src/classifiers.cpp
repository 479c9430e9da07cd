#include "labelguard/classifiers.hpp"

#include "labelguard/c45.hpp"
#include "labelguard/errors.hpp"
#include "labelguard/knn.hpp"
#include "labelguard/lda.hpp"
#include "labelguard/naive_bayes.hpp"
#include "labelguard/svm.hpp"

namespace labelguard {

std::string_view to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::svm: return "svm";
    case AlgorithmKind::c45: return "c45";
    case AlgorithmKind::nb: return "nb";
    case AlgorithmKind::knn: return "knn";
    case AlgorithmKind::lda: return "lda";
  }
  throw ArgumentError("invalid AlgorithmKind");
}

std::optional<AlgorithmKind> parse_algorithm(std::string_view text) {
  for (AlgorithmKind kind : kAllAlgorithms) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::vector<ClassLabel> TrainedClassifier::predict_batch(
    const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  std::vector<ClassLabel> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    out.push_back(predict(x.row(i).transpose()));
  }
  return out;
}

void TrainedClassifier::check_dim(Eigen::Index got) const {
  if (static_cast<std::size_t>(got) != dim()) {
    throw ArgumentError("feature vector has " + std::to_string(got) +
                        " dimensions, model expects " + std::to_string(dim()));
  }
}

namespace {

/// Stand-in for any algorithm when training saw a single class.
class ConstantClassifier final : public TrainedClassifier {
 public:
  ConstantClassifier(AlgorithmKind kind, ClassLabel label, std::size_t dim)
      : kind_(kind), label_(label), dim_(dim) {}

  AlgorithmKind kind() const override { return kind_; }
  std::size_t dim() const override { return dim_; }
  ClassLabel predict(const Eigen::Ref<const Eigen::VectorXd>& x) const override {
    check_dim(x.size());
    return label_;
  }

 private:
  AlgorithmKind kind_;
  ClassLabel label_;
  std::size_t dim_;
};

}  // namespace

ClassifierPtr train_classifier(AlgorithmKind kind, const SampleSet& train,
                               const ClassifierConfig& config) {
  if (train.empty()) throw ArgumentError("cannot train on an empty sample set");
  const auto counts = train.class_counts();
  std::size_t present = 0;
  ClassLabel only = ClassLabel::N;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (counts[c] > 0) {
      ++present;
      only = kAllLabels[c];
    }
  }
  if (present == 1) {
    return std::make_shared<ConstantClassifier>(kind, only, train.dim());
  }

  switch (kind) {
    case AlgorithmKind::svm: return train_svm(train, config.svm);
    case AlgorithmKind::c45: return train_c45(train, config.c45);
    case AlgorithmKind::nb: return train_naive_bayes(train, config.nb);
    case AlgorithmKind::knn: return train_knn(train, config.knn);
    case AlgorithmKind::lda: return train_lda(train, config.lda);
  }
  throw ArgumentError("invalid AlgorithmKind");
}

double accuracy(const TrainedClassifier& model, const SampleSet& test) {
  if (test.empty()) throw ArgumentError("cannot score an empty sample set");
  const auto predicted = model.predict_batch(test.x);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == test.labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

}  // namespace labelguard
