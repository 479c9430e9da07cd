#include "labelguard/lda.hpp"

#include <cmath>
#include <limits>

#include "labelguard/errors.hpp"

namespace labelguard {

LdaClassifier::LdaClassifier(std::vector<ClassModel> classes, std::size_t dim)
    : classes_(std::move(classes)), dim_(dim) {
  if (classes_.empty()) throw ArgumentError("lda needs classes");
  weights_.resize(static_cast<Eigen::Index>(dim_),
                  static_cast<Eigen::Index>(classes_.size()));
  offsets_.resize(static_cast<Eigen::Index>(classes_.size()));
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    weights_.col(static_cast<Eigen::Index>(c)) = classes_[c].weight;
    offsets_[static_cast<Eigen::Index>(c)] = classes_[c].offset;
  }
}

ClassLabel LdaClassifier::predict(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_dim(x.size());
  double best = -std::numeric_limits<double>::infinity();
  ClassLabel winner = classes_.front().label;
  for (const ClassModel& cls : classes_) {
    const double score = cls.weight.dot(x) + cls.offset;
    if (score > best) {
      best = score;
      winner = cls.label;
    }
  }
  return winner;
}

std::vector<ClassLabel> LdaClassifier::predict_batch(
    const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  check_dim(x.cols());
  const Eigen::MatrixXd scores = (x * weights_).rowwise() + offsets_.transpose();
  std::vector<ClassLabel> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < scores.cols(); ++c) {
      if (scores(r, c) > scores(r, best)) best = c;
    }
    out.push_back(classes_[static_cast<std::size_t>(best)].label);
  }
  return out;
}

ClassifierPtr train_lda(const SampleSet& train, const LdaConfig& config) {
  if (train.empty()) throw ArgumentError("cannot train on an empty sample set");
  const auto counts = train.class_counts();
  const double total = static_cast<double>(train.size());
  const Eigen::Index dim = train.x.cols();

  // Per-class means, then the pooled within-class covariance.
  std::vector<ClassLabel> present;
  std::vector<Eigen::VectorXd> means;
  std::vector<double> priors;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (counts[c] == 0) continue;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (std::size_t r = 0; r < train.size(); ++r) {
      if (train.labels[r] == kAllLabels[c]) {
        mean += train.x.row(static_cast<Eigen::Index>(r)).transpose();
      }
    }
    mean /= static_cast<double>(counts[c]);
    present.push_back(kAllLabels[c]);
    means.push_back(std::move(mean));
    priors.push_back(static_cast<double>(counts[c]) / total);
  }

  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t r = 0; r < train.size(); ++r) {
    std::size_t slot = 0;
    while (present[slot] != train.labels[r]) ++slot;
    const Eigen::VectorXd diff =
        train.x.row(static_cast<Eigen::Index>(r)).transpose() - means[slot];
    scatter.selfadjointView<Eigen::Lower>().rankUpdate(diff);
  }
  Eigen::MatrixXd cov =
      Eigen::MatrixXd(scatter.selfadjointView<Eigen::Lower>()) / total;

  double ridge = config.ridge_scale * cov.trace() / static_cast<double>(dim);
  if (ridge <= 0.0) ridge = config.ridge_scale;
  cov.diagonal().array() += ridge;

  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw ArgumentError("pooled covariance is not positive definite");
  }

  std::vector<LdaClassifier::ClassModel> classes;
  for (std::size_t c = 0; c < present.size(); ++c) {
    LdaClassifier::ClassModel cls;
    cls.label = present[c];
    cls.weight = llt.solve(means[c]);
    cls.offset = -0.5 * means[c].dot(cls.weight) + std::log(priors[c]);
    classes.push_back(std::move(cls));
  }
  return std::make_shared<LdaClassifier>(std::move(classes),
                                         static_cast<std::size_t>(dim));
}

}  // namespace labelguard
