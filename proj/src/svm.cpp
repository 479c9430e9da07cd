#include "labelguard/svm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "labelguard/errors.hpp"

namespace labelguard {

Eigen::MatrixXd kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd>& a,
                              const Eigen::Ref<const Eigen::MatrixXd>& b,
                              const KernelSpec& kernel) {
  if (a.cols() != b.cols()) {
    throw ArgumentError("kernel operands have mismatched dimensions");
  }
  Eigen::MatrixXd dot = a * b.transpose();
  if (kernel.kind == KernelSpec::Kind::linear) return dot;

  const Eigen::VectorXd an = a.rowwise().squaredNorm();
  const Eigen::VectorXd bn = b.rowwise().squaredNorm();
  Eigen::MatrixXd dist2 =
      (-2.0 * dot).colwise() + an;  // an_i - 2 dot_ij, then add bn_j
  dist2.rowwise() += bn.transpose();
  return (-kernel.gamma * dist2.cwiseMax(0.0)).array().exp();
}

namespace {

struct SmoSolution {
  Eigen::VectorXd alpha;
  double bias = 0.0;
};

/// Two-class SMO on the dual with box constraint [0, C] and the equality
/// constraint sum alpha_i y_i = 0. Working pairs are picked by maximal KKT
/// violation; the loop stops once the violation gap drops below tol.
SmoSolution smo_solve(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                      const KernelSpec& kernel, double tol,
                      std::int64_t max_iter) {
  const Eigen::Index m = x.rows();
  const double c = kernel.c;
  const Eigen::MatrixXd k = kernel_matrix(x, x, kernel);

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(m, -1.0);

  auto in_up = [&](Eigen::Index t) {
    return y[t] > 0.0 ? alpha[t] < c : alpha[t] > 0.0;
  };
  auto in_low = [&](Eigen::Index t) {
    return y[t] > 0.0 ? alpha[t] > 0.0 : alpha[t] < c;
  };

  for (std::int64_t iter = 0; iter < max_iter; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    Eigen::Index i = -1;
    Eigen::Index j = -1;
    for (Eigen::Index t = 0; t < m; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    if (i < 0 || j < 0 || gmax - gmin <= tol) break;

    double eta = k(i, i) + k(j, j) - 2.0 * k(i, j);
    if (eta <= 0.0) eta = 1e-12;

    const double ai = alpha[i];
    const double aj = alpha[j];
    const double s = y[i] * y[j];
    double lo;
    double hi;
    if (s < 0.0) {
      lo = std::max(0.0, aj - ai);
      hi = std::min(c, c + aj - ai);
    } else {
      lo = std::max(0.0, ai + aj - c);
      hi = std::min(c, ai + aj);
    }
    const double ei = y[i] * grad[i];  // decision error without bias
    const double ej = y[j] * grad[j];
    const double aj_new = std::clamp(aj + y[j] * (ei - ej) / eta, lo, hi);
    const double ai_new = ai + s * (aj - aj_new);
    const double di = ai_new - ai;
    const double dj = aj_new - aj;
    if (di == 0.0 && dj == 0.0) break;  // step underflowed, no progress left

    alpha[i] = ai_new;
    alpha[j] = aj_new;
    grad.array() += y.array() * (k.col(i).array() * (y[i] * di) +
                                 k.col(j).array() * (y[j] * dj));
  }

  // Bias from free vectors when available, otherwise the violation midpoint.
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double gmax = -std::numeric_limits<double>::infinity();
  double gmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < m; ++t) {
    const double v = -y[t] * grad[t];
    if (alpha[t] > 0.0 && alpha[t] < c) {
      free_sum += v;
      ++free_count;
    }
    if (in_up(t)) gmax = std::max(gmax, v);
    if (in_low(t)) gmin = std::min(gmin, v);
  }
  SmoSolution out;
  out.alpha = std::move(alpha);
  out.bias = free_count > 0 ? free_sum / static_cast<double>(free_count)
                            : 0.5 * (gmax + gmin);
  return out;
}

}  // namespace

SvmClassifier::SvmClassifier(std::vector<PairModel> pairs, KernelSpec kernel,
                             std::size_t dim)
    : pairs_(std::move(pairs)), kernel_(kernel), dim_(dim) {}

double SvmClassifier::decision_value(
    const PairModel& pair, const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::MatrixXd kq =
      kernel_matrix(pair.support_vectors, x.transpose(), kernel_);
  return pair.alpha_y.dot(kq.col(0)) + pair.bias;
}

namespace {

/// Majority vote over pairwise decisions; ties go to the class with the
/// larger summed |decision value|, then to the smaller label value.
ClassLabel resolve_votes(const std::array<int, kNumClasses>& votes,
                         const std::array<double, kNumClasses>& strength) {
  std::size_t best = 0;
  for (std::size_t cls = 1; cls < kNumClasses; ++cls) {
    if (votes[cls] > votes[best] ||
        (votes[cls] == votes[best] && strength[cls] > strength[best])) {
      best = cls;
    }
  }
  return kAllLabels[best];
}

}  // namespace

ClassLabel SvmClassifier::predict(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_dim(x.size());
  std::array<int, kNumClasses> votes{};
  std::array<double, kNumClasses> strength{};
  for (const PairModel& pair : pairs_) {
    const double d = decision_value(pair, x);
    const ClassLabel winner = d > 0.0 ? pair.positive : pair.negative;
    ++votes[static_cast<std::size_t>(winner)];
    strength[static_cast<std::size_t>(winner)] += std::abs(d);
  }
  return resolve_votes(votes, strength);
}

std::vector<ClassLabel> SvmClassifier::predict_batch(
    const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  check_dim(x.cols());
  const Eigen::Index n = x.rows();
  std::vector<std::array<int, kNumClasses>> votes(
      static_cast<std::size_t>(n), std::array<int, kNumClasses>{});
  std::vector<std::array<double, kNumClasses>> strength(
      static_cast<std::size_t>(n), std::array<double, kNumClasses>{});
  for (const PairModel& pair : pairs_) {
    const Eigen::MatrixXd kq = kernel_matrix(pair.support_vectors, x, kernel_);
    const Eigen::VectorXd d =
        (kq.transpose() * pair.alpha_y).array() + pair.bias;
    for (Eigen::Index r = 0; r < n; ++r) {
      const ClassLabel winner = d[r] > 0.0 ? pair.positive : pair.negative;
      const auto row = static_cast<std::size_t>(r);
      ++votes[row][static_cast<std::size_t>(winner)];
      strength[row][static_cast<std::size_t>(winner)] += std::abs(d[r]);
    }
  }
  std::vector<ClassLabel> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
    out.push_back(resolve_votes(votes[r], strength[r]));
  }
  return out;
}

ClassifierPtr train_svm(const SampleSet& train, const SvmConfig& config) {
  if (train.empty()) throw ArgumentError("cannot train on an empty sample set");
  KernelSpec kernel = config.kernel;
  if (kernel.c <= 0.0) throw ArgumentError("svm box constraint must be positive");
  if (kernel.gamma == 0.0) {
    kernel.gamma = 1.0 / static_cast<double>(train.dim());
  }

  std::array<std::vector<Eigen::Index>, kNumClasses> by_class;
  for (std::size_t r = 0; r < train.size(); ++r) {
    by_class[static_cast<std::size_t>(train.labels[r])].push_back(
        static_cast<Eigen::Index>(r));
  }

  std::vector<SvmClassifier::PairModel> pairs;
  for (std::size_t a = 0; a < kNumClasses; ++a) {
    if (by_class[a].empty()) continue;
    for (std::size_t b = a + 1; b < kNumClasses; ++b) {
      if (by_class[b].empty()) continue;
      const Eigen::Index na = static_cast<Eigen::Index>(by_class[a].size());
      const Eigen::Index nb = static_cast<Eigen::Index>(by_class[b].size());
      Eigen::MatrixXd x(na + nb, train.x.cols());
      Eigen::VectorXd y(na + nb);
      for (Eigen::Index r = 0; r < na; ++r) {
        x.row(r) = train.x.row(by_class[a][static_cast<std::size_t>(r)]);
        y[r] = 1.0;
      }
      for (Eigen::Index r = 0; r < nb; ++r) {
        x.row(na + r) = train.x.row(by_class[b][static_cast<std::size_t>(r)]);
        y[na + r] = -1.0;
      }

      const SmoSolution sol =
          smo_solve(x, y, kernel, config.tol, config.max_iter);

      std::vector<Eigen::Index> sv;
      for (Eigen::Index r = 0; r < sol.alpha.size(); ++r) {
        if (sol.alpha[r] > 0.0) sv.push_back(r);
      }
      SvmClassifier::PairModel pair;
      pair.positive = kAllLabels[a];
      pair.negative = kAllLabels[b];
      pair.bias = sol.bias;
      pair.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), x.cols());
      pair.alpha_y.resize(static_cast<Eigen::Index>(sv.size()));
      for (std::size_t r = 0; r < sv.size(); ++r) {
        pair.support_vectors.row(static_cast<Eigen::Index>(r)) = x.row(sv[r]);
        pair.alpha_y[static_cast<Eigen::Index>(r)] =
            sol.alpha[sv[r]] * y[sv[r]];
      }
      pairs.push_back(std::move(pair));
    }
  }
  if (pairs.empty()) {
    throw ArgumentError("svm training requires at least two classes");
  }
  return std::make_shared<SvmClassifier>(std::move(pairs), kernel, train.dim());
}

}  // namespace labelguard
