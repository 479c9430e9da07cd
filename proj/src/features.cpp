#include "labelguard/features.hpp"

#include <deque>

#include "labelguard/errors.hpp"

namespace labelguard {

SampleSet assemble_features(const std::vector<BeatSegment>& beats,
                            std::size_t morphology_points) {
  const std::size_t dim = morphology_points + 3;
  SampleSet set;
  set.x.resize(static_cast<Eigen::Index>(beats.size()),
               static_cast<Eigen::Index>(dim));
  set.labels.reserve(beats.size());
  set.ids.reserve(beats.size());
  set.noise_flags.assign(beats.size(), 0);

  std::string current_record;
  std::deque<double> recent_rr;
  for (std::size_t i = 0; i < beats.size(); ++i) {
    const BeatSegment& beat = beats[i];
    if (beat.record_id != current_record) {
      current_record = beat.record_id;
      recent_rr.clear();
    }
    if (!(beat.prev_rr_s > 0.0))
      throw ArgumentError("assemble_features: beat without RR interval");
    recent_rr.push_back(beat.prev_rr_s);
    if (recent_rr.size() > 10) recent_rr.pop_front();
    double rr_sum = 0.0;
    for (double rr : recent_rr) rr_sum += rr;

    const std::vector<double> morph =
        resample_morphology(beat.samples, morphology_points);
    auto row = set.x.row(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < morphology_points; ++j)
      row(static_cast<Eigen::Index>(j)) = morph[j];
    if (!beat.qrs_duration_s)
      throw ArgumentError("assemble_features: beat without QRS duration");
    row(static_cast<Eigen::Index>(morphology_points)) = *beat.qrs_duration_s;
    row(static_cast<Eigen::Index>(morphology_points + 1)) = beat.prev_rr_s;
    row(static_cast<Eigen::Index>(morphology_points + 2)) =
        rr_sum / static_cast<double>(recent_rr.size());

    set.labels.push_back(beat.label);
    set.ids.push_back(beat.record_id + ":" +
                      std::to_string(beat.r_peak_index));
  }
  set.validate();
  return set;
}

NormalizationParams fit_minmax(const SampleSet& train) {
  if (train.empty()) throw ArgumentError("fit_minmax: empty training set");
  return {train.x.colwise().minCoeff(), train.x.colwise().maxCoeff()};
}

SampleSet apply_minmax(const SampleSet& set,
                       const NormalizationParams& params) {
  if (params.min.size() != set.x.cols() || params.max.size() != set.x.cols())
    throw ArgumentError("apply_minmax: dimension mismatch");
  SampleSet out = set;
  for (Eigen::Index j = 0; j < out.x.cols(); ++j) {
    const double lo = params.min(j);
    const double range = params.max(j) - lo;
    for (Eigen::Index i = 0; i < out.x.rows(); ++i) {
      if (range <= 0.0) {
        out.x(i, j) = 0.0;
      } else {
        const double v = (out.x(i, j) - lo) / range;
        out.x(i, j) = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
      }
    }
  }
  return out;
}

PcaModel fit_pca(const SampleSet& train, double variance_target,
                 std::optional<std::size_t> component_override) {
  if (train.size() < 2) throw ArgumentError("fit_pca: need >= 2 rows");
  if (!component_override &&
      !(variance_target > 0.0 && variance_target <= 1.0))
    throw ArgumentError("fit_pca: variance target must be in (0, 1]");

  const Eigen::Index n = train.x.rows();
  const Eigen::Index d = train.x.cols();
  PcaModel model;
  model.mean = train.x.colwise().mean();
  Eigen::MatrixXd centered = train.x.rowwise() - model.mean.transpose();
  Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw ArgumentError("fit_pca: eigendecomposition failed");

  // Eigen returns ascending eigenvalues; flip to non-increasing.
  Eigen::VectorXd values = solver.eigenvalues().reverse();
  Eigen::MatrixXd directions =
      solver.eigenvectors().rowwise().reverse().transpose();
  values = values.cwiseMax(0.0);

  std::size_t keep;
  if (component_override) {
    if (*component_override == 0 ||
        *component_override > static_cast<std::size_t>(d))
      throw ArgumentError("fit_pca: bad component override");
    keep = *component_override;
  } else {
    const double total = values.sum();
    keep = static_cast<std::size_t>(d);
    if (total > 0.0) {
      double cumulative = 0.0;
      for (Eigen::Index i = 0; i < values.size(); ++i) {
        cumulative += values(i);
        if (cumulative / total >= variance_target) {
          keep = static_cast<std::size_t>(i) + 1;
          break;
        }
      }
    } else {
      keep = 1;  // degenerate constant data
    }
  }

  model.components = directions.topRows(static_cast<Eigen::Index>(keep));
  model.explained_variance = values.head(static_cast<Eigen::Index>(keep));
  return model;
}

SampleSet apply_pca(const SampleSet& set, const PcaModel& model) {
  if (model.mean.size() != set.x.cols())
    throw ArgumentError("apply_pca: dimension mismatch");
  SampleSet out;
  out.x = (set.x.rowwise() - model.mean.transpose()) *
          model.components.transpose();
  out.labels = set.labels;
  out.ids = set.ids;
  out.noise_flags = set.noise_flags;
  return out;
}

}  // namespace labelguard
