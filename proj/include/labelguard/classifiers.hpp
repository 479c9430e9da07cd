#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "labelguard/labels.hpp"
#include "labelguard/sample_set.hpp"

namespace labelguard {

enum class AlgorithmKind { svm, c45, nb, knn, lda };

inline constexpr std::array<AlgorithmKind, 5> kAllAlgorithms = {
    AlgorithmKind::svm, AlgorithmKind::c45, AlgorithmKind::nb,
    AlgorithmKind::knn, AlgorithmKind::lda};

std::string_view to_string(AlgorithmKind kind);
std::optional<AlgorithmKind> parse_algorithm(std::string_view text);

struct KernelSpec {
  enum class Kind { linear, rbf };
  Kind kind = Kind::rbf;
  double gamma = 0.0;  // 0 means 1 / feature count, resolved at training
  double c = 10.0;     // box constraint
};

struct SvmConfig {
  KernelSpec kernel;
  double tol = 1e-3;               // KKT violation tolerance
  std::int64_t max_iter = 500000;  // per pairwise subproblem
};

struct KnnConfig {
  std::size_t k = 5;
};

struct NbConfig {
  double variance_floor = 1e-9;
};

struct LdaConfig {
  double ridge_scale = 1e-6;  // times trace/dim, added to the pooled scatter
};

struct C45Config {
  std::size_t max_depth = 25;  // nodes at this depth become leaves
  std::size_t min_split = 5;   // nodes smaller than this become leaves
};

struct ClassifierConfig {
  SvmConfig svm;
  KnnConfig knn;
  NbConfig nb;
  LdaConfig lda;
  C45Config c45;
};

/// A trained model. Immutable after training; predict is deterministic and
/// safe to call concurrently.
class TrainedClassifier {
 public:
  virtual ~TrainedClassifier() = default;
  virtual AlgorithmKind kind() const = 0;
  virtual std::size_t dim() const = 0;
  virtual ClassLabel predict(const Eigen::Ref<const Eigen::VectorXd>& x) const = 0;
  /// Row-wise prediction; overridden where a batched path pays off.
  virtual std::vector<ClassLabel> predict_batch(
      const Eigen::Ref<const Eigen::MatrixXd>& x) const;

 protected:
  void check_dim(Eigen::Index got) const;
};

using ClassifierPtr = std::shared_ptr<const TrainedClassifier>;

/// Trains a model of the given kind. A single-class training set yields a
/// degenerate model that always predicts that class; an empty set throws.
ClassifierPtr train_classifier(AlgorithmKind kind, const SampleSet& train,
                               const ClassifierConfig& config);

/// Fraction of rows where predict matches the stored label.
double accuracy(const TrainedClassifier& model, const SampleSet& test);

}  // namespace labelguard
