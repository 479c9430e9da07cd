#include "labelguard/naive_bayes.hpp"

#include <cmath>
#include <limits>

#include "labelguard/errors.hpp"

namespace labelguard {

namespace {
constexpr double kLogTwoPi = 1.8378770664093453;
}

NaiveBayesClassifier::NaiveBayesClassifier(std::vector<ClassModel> classes,
                                           std::size_t dim)
    : classes_(std::move(classes)), dim_(dim) {
  if (classes_.empty()) throw ArgumentError("naive bayes needs classes");
}

double NaiveBayesClassifier::log_score(
    const ClassModel& cls, const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::ArrayXd diff = (x - cls.mean).array();
  const Eigen::ArrayXd var = cls.variance.array();
  const double quad = (diff * diff / var).sum();
  const double log_det = var.log().sum();
  return cls.log_prior -
         0.5 * (quad + log_det + static_cast<double>(dim_) * kLogTwoPi);
}

ClassLabel NaiveBayesClassifier::predict(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_dim(x.size());
  double best = -std::numeric_limits<double>::infinity();
  ClassLabel winner = classes_.front().label;
  for (const ClassModel& cls : classes_) {
    const double score = log_score(cls, x);
    if (score > best) {
      best = score;
      winner = cls.label;
    }
  }
  return winner;
}

ClassifierPtr train_naive_bayes(const SampleSet& train, const NbConfig& config) {
  if (train.empty()) throw ArgumentError("cannot train on an empty sample set");
  if (config.variance_floor <= 0.0) {
    throw ArgumentError("variance floor must be positive");
  }
  const auto counts = train.class_counts();
  const double total = static_cast<double>(train.size());

  std::vector<NaiveBayesClassifier::ClassModel> classes;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (counts[c] == 0) continue;
    NaiveBayesClassifier::ClassModel cls;
    cls.label = kAllLabels[c];
    cls.log_prior = std::log(static_cast<double>(counts[c]) / total);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(train.x.cols());
    Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(train.x.cols());
    for (std::size_t r = 0; r < train.size(); ++r) {
      if (train.labels[r] != cls.label) continue;
      const auto row = train.x.row(static_cast<Eigen::Index>(r)).transpose();
      sum += row;
      sum_sq += row.cwiseProduct(row);
    }
    const double n = static_cast<double>(counts[c]);
    cls.mean = sum / n;
    cls.variance = (sum_sq / n - cls.mean.cwiseProduct(cls.mean))
                       .cwiseMax(config.variance_floor);
    classes.push_back(std::move(cls));
  }
  return std::make_shared<NaiveBayesClassifier>(std::move(classes),
                                                train.dim());
}

}  // namespace labelguard
